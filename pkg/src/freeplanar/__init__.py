"""Planar diagram algebras, free dimension bookkeeping and free Poisson laws."""

from .diagrams import (ColorSpec, DiagramElement, PlanarPairing, ShadedWord, close_trace,
                       close_trace_left, count_pairings, determinant, embed_with_cups,
                       enumerate_pairings, gram_matrix, inner_product, jones_wenzl, parse_pairing,
                       psd_check, stack_multiply, tensor, tl_generator, validate_word)
from .factors import (DiffuseHyperfinite, Edge, FactorDecomposition, FreeGroup, GraphReport,
                      MatrixAtom, WeightedGraph, a_infinity_family, amplify, analyze_graph, cutdown,
                      dykema_free_product, fc_parameter, fdim, global_index_npm, gjs_parameter,
                      perron_frobenius, truncation_sequence)
from .graded import (EpiDiagram, GradedElement, enumerate_epi, graded_trace, moments, phi, star,
                     wedge)
from .laws import (Law, MomentSeries, cauchy_from_mgf, fc_cup_moments, fp_density, fp_law,
                   fp_mgf_series, fp_moments, free_joint_moment, moments_from_s, s_multiply,
                   s_transform, stieltjes_density)
from .scalars import ScalarPoly
from .series import FormalSeries
from .surd import QuadraticSurd

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
