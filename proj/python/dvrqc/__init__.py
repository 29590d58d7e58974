"""DVR electronic structure for 1D chains: HF, CASCI, Jordan-Wigner CI and DMRG."""

import json as _json

from ._core import (
    ConfigError,
    ContractViolation,
    ConvergenceError,
    DmrgResult,
    DvrBasis,
    IntegralSet,
    InvalidDomain,
    ScfResult,
    build_integrals,
    casci,
    dmrg,
    fci,
    fnv1a_hex,
    fock_matrix,
    jwci,
    kinetic_matrix,
    random_small_instance,
    scf,
    selftest,
    sinc_dvr,
    sine_dvr,
)
from ._core import run_config as _run_config

__version__ = "0.1.0"

BOHR_PER_ANGSTROM = 1.8897259886


def run(path, methods="all"):
    """Run a JSON config; returns (report dict, exit code)."""
    text, code = _run_config(str(path), methods)
    return _json.loads(text), code


__all__ = [name for name in dir() if not name.startswith("_")]
