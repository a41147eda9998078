"""Exact degrees and base loci of rational self-maps of projective space over
finite fields, with the supporting commutative-algebra toolkit."""

from .errors import RatdegError
from .field import FieldElement, PrimeField, extension, field_from_spec, make_ext_field
from .ideal import Ideal, groebner, hilbert_length, saturate, saturate_irrelevant
from .parse import parse_map_file, parse_poly
from .poly import PolyRing, Poly
from .ratmap import analyze, base_locus, census, degree_exact, new_map

__all__ = [
    "FieldElement",
    "Ideal",
    "Poly",
    "PolyRing",
    "PrimeField",
    "RatdegError",
    "analyze",
    "base_locus",
    "census",
    "degree_exact",
    "extension",
    "field_from_spec",
    "groebner",
    "hilbert_length",
    "make_ext_field",
    "new_map",
    "parse_map_file",
    "parse_poly",
    "saturate",
    "saturate_irrelevant",
]
