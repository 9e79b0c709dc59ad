from .api import analyze, bch_document, corpus_document, load, report, represent, validate, verify
from .bch import bch_derivative_coeffs, bch_product, left_translation
from .errors import NilrepError
from .lie import LieAlgebra, load_algebra
from .poly import PolyFun, PolyMap
from .regular import lie_derivative, translate_poly
from .representation import Representation, build_FG

__all__ = [
    "LieAlgebra",
    "NilrepError",
    "PolyFun",
    "PolyMap",
    "Representation",
    "analyze",
    "bch_derivative_coeffs",
    "bch_document",
    "bch_product",
    "build_FG",
    "corpus_document",
    "left_translation",
    "lie_derivative",
    "load",
    "load_algebra",
    "report",
    "represent",
    "translate_poly",
    "validate",
    "verify",
]
