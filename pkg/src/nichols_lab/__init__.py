"""nichols-lab: exact computation with finite racks, enveloping groups, and
Nichols algebras of rack type over Q and prime fields."""

__version__ = "0.1.0"
