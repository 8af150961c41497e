"""
Registry of verification checks.
"""

from typing import Dict, List, Optional

from bochner_lab.core.exceptions import UnknownCheck
from bochner_lab.domain.catalog.models.entry import EntryKind
from bochner_lab.domain.checks.models.check import CheckDefinition
from bochner_lab.domain.checks.services import runners as r

MAP = frozenset({EntryKind.MAP})
IMMERSION = frozenset({EntryKind.IMMERSION})
MANIFOLD = frozenset({EntryKind.MANIFOLD})
ANY = frozenset(EntryKind)

DEFAULT_CHECKS = [
    CheckDefinition("weitzenboeck", MAP, r.weitzenboeck,
                    "Delta e(f) = |Ddf|^2 + Q(f) for harmonic maps", decay="max_abs"),
    CheckDefinition("harmonic", MAP, r.harmonic, "Tension field vanishes", decay="max_tension"),
    CheckDefinition("q_eigenframe", MAP, r.q_eigenframe,
                    "Codomain curvature term of Q in the eigenframe of Phi"),
    CheckDefinition("q_bound", MAP, r.q_bound, "Q(f) >= B at every certified node"),
    CheckDefinition("hypotheses_2_3", MAP, r.hypotheses_2_3,
                    "Curvature hypotheses of the energy vanishing theorem"),
    CheckDefinition("eells_sampson", MAP, r.eells_sampson,
                    "Ric >= 0 and sec <= 0 on the image imply Q >= 0"),
    CheckDefinition("integral_q", MAP, r.integral_q,
                    "Integral of |Ddf|^2 + Q vanishes for harmonic maps"),
    CheckDefinition("simons", IMMERSION, r.simons,
                    "Simons formula for minimal submanifolds of space forms", decay="residual"),
    CheckDefinition("codazzi", IMMERSION, r.codazzi,
                    "Codazzi equations and divergence identities", decay="codazzi_max"),
    CheckDefinition("pinching", IMMERSION, r.pinching, "||phi||^2 against kn/(2k-1) C"),
    CheckDefinition("gauss", IMMERSION, r.gauss,
                    "Gauss-formula geometry against the induced metric", decay="christoffel_max"),
    CheckDefinition("classify", IMMERSION, r.classification,
                    "Totally geodesic, umbilical, minimal and cmc flags"),
    CheckDefinition("clifford_constants", IMMERSION, r.clifford_constants,
                    "Principal curvatures of generalized Clifford tori",
                    decay="numeric_deviation"),
    CheckDefinition("cmc_lp_rigidity", IMMERSION, r.cmc_lp_rigidity,
                    "Non-negatively curved cmc hypersurfaces with L^p phi are totally geodesic"),
    CheckDefinition("integral_3_9", IMMERSION, r.integral_3_9,
                    "Divergence of the traceless part and the integral formula",
                    decay="divergence_residual"),
    CheckDefinition("stability", IMMERSION, r.stability, "Spectrum of the Jacobi operator"),
    CheckDefinition("superharmonic", IMMERSION, r.superharmonic,
                    "1/2 Delta u^2 = |du|^2 + u Delta u and the Lu <= 0 chain",
                    decay="identity_residual"),
    CheckDefinition("rigidity", IMMERSION, r.rigidity,
                    "Constant zero-free u with Lu <= 0 forces phi = 0 and Ric(N, N) = 0"),
    CheckDefinition("decomposition", MANIFOLD | IMMERSION, r.decomposition,
                    "L2-orthogonal split into deformation, trace and TT parts"),
    CheckDefinition("ahlfors_eigenform", MANIFOLD, r.ahlfors_eigenform,
                    "S*S(sin kx dx) is a multiple of sin kx dx on a flat torus", decay="eigenform"),
    CheckDefinition("reference", ANY, r.reference, "Closed-form references of a catalog entry"),
]


class CheckRepository:
    """
    Lookup of check definitions by id.
    """

    def __init__(self, checks: Optional[List[CheckDefinition]] = None):
        checks = DEFAULT_CHECKS if checks is None else checks
        self._checks: Dict[str, CheckDefinition] = {check.check_id: check for check in checks}

    def get(self, check_id: str) -> CheckDefinition:
        """
        Get a check by id.

        Raises:
            UnknownCheck: if the id is not registered
        """
        try:
            return self._checks[check_id]
        except KeyError:
            raise UnknownCheck(check_id) from None

    def names(self) -> List[str]:
        return sorted(self._checks)

    def all(self) -> List[CheckDefinition]:
        return [self._checks[name] for name in self.names()]

    def __contains__(self, check_id: str) -> bool:
        return check_id in self._checks
