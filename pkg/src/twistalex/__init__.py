"""Alexander-type knot invariants: classical and twisted Alexander torsion
over exact fields, and the abelianization L2-Alexander torsion as a
symbolic max-product function."""

__version__ = "0.1.0"
