"""Square-free monomial ideals, their facet and Stanley-Reisner complexes, and decompositions."""
