"""Unions of q+1 orthonormal bases over GF(2^(2tr)) whose spark meets the Gribonval-Nielsen bound.

Everything is exact: dictionaries are stored as integers scaled by 2^m,
coherence and bounds are Fractions, and spark is certified either from a
matching lower bound and dependency witness or by brute-force search.
"""

from .certify import SparkCertificate, lemma_suite, lower_bounds, mutual_coherence, verify_witness
from .construct import DependencyWitness, ScaledDictionary, build_dictionary, build_S, dependent_set
from .field import FieldSpec, build_field
from .kernel import BACKEND
from .oracle import brute_spark, exact_rank
from .recover import SparseVector, l0_solve, synthesize, uniqueness_demo

__version__ = "0.1.0"
