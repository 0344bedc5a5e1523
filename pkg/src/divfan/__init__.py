"""Exact combinatorics of polyhedral divisors, divisorial fans and their Galois descent."""

__version__ = "0.1.0"

from .errors import DivfanError  # noqa: E402
from .verdict import Verdict  # noqa: E402
from .exact import QQ, QQ_I, FieldAutomorphism, FiniteGroup, NumberField, conjugation  # noqa: E402
from .polyhedral import Cone, Polyhedron  # noqa: E402
from .base import (INF, BaseVariety, Plurifunction, QDivisor, RationalFunction,  # noqa: E402
                   SemilinearBaseMap)
from .lp import LinearProgram, fm_eliminate, solve  # noqa: E402
from .ppdivisor import (FaceCertificate, PPDivisor, PPDMorphism, check_proper,  # noqa: E402
                        evaluate, localize, search_face, verify_face, verify_morphism)
from .fan import (DivisorialFan, closure_generate, quasiprojectivity_check,  # noqa: E402
                  separatedness_check, tail_fan, validate_fan)
from .descent import (GaloisFanAction, SemilinearFanMorphism, ToricFan,  # noqa: E402
                      fan_automorphism_group, orbit_subfan, toric_descent_check,
                      tvariety_descent_check, verify_galois_action)
from .document import Document, library  # noqa: E402
