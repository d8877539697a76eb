import json

from ._pstqec import (
    CapacityError,
    ChainSpec,
    EncodingError,
    Error,
    FrameError,
    IntegrityError,
    MalformedInput,
    NumericalError,
    PreconditionError,
    catalog_names,
    compute_R,
    compute_W,
    custom_chain,
    dephasing_sweep,
    parse_chain,
    propagator,
    pst_fidelity,
    repetition_experiment,
    spectral_symmetry_residual,
    standard_chain,
)

__version__ = "0.3.0"


def verify_code(name):
    """Verification report for a catalog name or table path, as a dict."""
    from ._pstqec import verify_code_json

    return json.loads(verify_code_json(name))
