"""Defeasible inheritance nets: validity, reactive compilation and size semantics."""
from .config import DEFAULT, PolicyConfig, Resolver, Scepticism, Scope, UnsupportedPolicy, Validity
from .engine import (Conclusion, Engine, Extension, SourceReport, compute_extensions, is_valid,
                     query, resolve_sources, signposts)
from .net import (NEG, POS, CycleDetected, Diagram, HardContradiction, Link, Path, PathKind,
                  Polarity, SelfLoop, UnknownNode, build_diagram, concatenate, degree, diagram,
                  neg, pos)

__all__ = [
    "DEFAULT", "NEG", "POS", "Conclusion", "CycleDetected", "Diagram", "Engine", "Extension",
    "HardContradiction", "Link", "Path", "PathKind", "PolicyConfig", "Polarity", "Resolver",
    "Scepticism", "Scope", "SelfLoop", "SourceReport", "UnknownNode", "UnsupportedPolicy",
    "Validity", "build_diagram", "compute_extensions", "concatenate", "degree", "diagram",
    "is_valid", "neg", "pos", "query", "resolve_sources", "signposts",
]
