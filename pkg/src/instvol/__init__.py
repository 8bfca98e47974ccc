"""Exact equivariant volumes of linear symplectic and hyper-Kahler quotients
as iterated positive residues of a single rational function, with instanton
partition function assembly for the classical gauge groups.

All core arithmetic is exact big-rational; floating point never enters.
"""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401,E402
    FactoredRational,
    LinearForm,
    Polynomial,
    exact_divide,
    poly_arith,
)
from .adhm import (  # noqa: F401,E402
    AdhmSpec,
    rescale_epsilon,
    so_system,
    sp_system,
    su_system,
    system_for,
)
from .errors import (  # noqa: F401,E402
    BetaOrderMismatch,
    InstvolError,
    PoleAtAssignment,
    StructureError,
    UnsupportedFeature,
    ValidationError,
    VanishingFactor,
)
from .nekrasov import (  # noqa: F401,E402
    QSeries,
    charge_coefficient,
    evaluate,
    finst,
    zinst,
)
from .oracle import (  # noqa: F401,E402
    beta_limit,
    character_from_weights,
    contour_residue,
    partition_sum_su,
    run_character_oracle,
)
from .quotient import (  # noqa: F401,E402
    WeightSystem,
    c4_hyperkahler_example,
    central_function,
    circle_reduction_example,
    equivariant_volume,
    validate_polarization,
    weight_system_from_json,
    weight_system_to_json,
)
from .residue import (  # noqa: F401,E402
    ExpTerm,
    PoleClass,
    ResidueTrace,
    enumerate_admissible_paths,
    jkres_plus_exp,
    pole_classes,
    res_plus,
    res_plus_iterated,
    residue_at,
)
from .symbols import SymbolTable  # noqa: F401,E402
