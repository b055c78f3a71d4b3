"""
arbocert: certified surjectivity of arboreal Galois representations.
"""
import os

version_file = os.path.join(os.path.dirname(__file__), 'VERSION.txt')
with open(version_file) as fh:
    __version__ = fh.read().strip()

from .certify import SurjectivityCertifier, certify_surjective
from .family import FamilyConstructor
from .frobenius import ChebotarevScan
from .monodromy import MonodromyCertifier, certify_monodromy
from .poly import RatPoly, parse_poly

__all__ = ['SurjectivityCertifier', 'FamilyConstructor', 'ChebotarevScan',
           'MonodromyCertifier', 'certify_surjective', 'certify_monodromy',
           'RatPoly', 'parse_poly']
