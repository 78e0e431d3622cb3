"""qdeny: a desk-scale simulation lab for quantum deniable encryption.

Subpackages cover statistical distances, toy and lattice trapdoor claw-free
families, a sparse statevector simulator, the single-bit deniable scheme, a
compressed phase oracle with its equivalence harness, the parallel-repeated
oracle scheme, and the structure/extraction checkers built on top of it.
"""

__version__ = "0.1.0"
