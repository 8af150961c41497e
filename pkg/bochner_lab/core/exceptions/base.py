from typing import Any, Dict, Optional, Sequence, Tuple


class BochnerLabError(Exception):
    """
    Base exception for application-specific exceptions.
    Carries a machine-readable code and the process exit code it maps to.
    """

    exit_code: int = 2

    def __init__(
        self,
        detail: str,
        code: str = "error",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail)
        self.detail = detail
        self.code = code
        self.context = context or {}


class ValidationError(BochnerLabError):
    """Exception raised when an input violates a documented precondition."""

    def __init__(self, detail: str = "Validation error", code: str = "validation_error"):
        super().__init__(detail=detail, code=code)


class InvalidParameters(BochnerLabError):
    """Exception raised when catalog or configuration parameters are invalid."""

    exit_code = 4

    def __init__(self, detail: str = "Invalid parameters", code: str = "invalid_parameters"):
        super().__init__(detail=detail, code=code)


class UnknownEntry(BochnerLabError):
    """Exception raised when a catalog name does not resolve."""

    exit_code = 4

    def __init__(self, name: str, code: str = "unknown_entry"):
        super().__init__(detail=f"Unknown catalog entry '{name}'", code=code)
        self.name = name


class UnknownCheck(BochnerLabError):
    """Exception raised when a check id is not registered."""

    exit_code = 4

    def __init__(self, check_id: str, code: str = "unknown_check"):
        super().__init__(detail=f"Unknown check '{check_id}'", code=code)
        self.check_id = check_id


class DegenerateMetric(BochnerLabError):
    """Exception raised when a metric is not positive definite at a node."""

    def __init__(self, node: Tuple[int, ...], min_eigenvalue: float):
        super().__init__(
            detail=f"Metric not positive definite at node {node} "
            f"(smallest eigenvalue {min_eigenvalue:.3e})",
            code="degenerate_metric",
            context={"node": list(node), "min_eigenvalue": min_eigenvalue},
        )
        self.node = node


class StencilOutOfDomain(BochnerLabError):
    """Exception raised when a centred stencil would leave a non-periodic chart."""

    def __init__(self, axis: int, margin_nodes: int, half_width: int):
        super().__init__(
            detail=f"Stencil of half-width {half_width} crosses the margin of "
            f"non-periodic axis {axis} ({margin_nodes} margin nodes)",
            code="stencil_out_of_domain",
            context={"axis": axis, "margin_nodes": margin_nodes, "half_width": half_width},
        )


class DegeneratePlane(BochnerLabError):
    """Exception raised when two vectors do not span a 2-plane."""

    def __init__(self, detail: str = "Vectors are linearly dependent"):
        super().__init__(detail=detail, code="degenerate_plane")


class InvalidExponent(BochnerLabError):
    """Exception raised for an Lp exponent below one."""

    def __init__(self, p: float):
        super().__init__(detail=f"Exponent p={p} must be >= 1", code="invalid_exponent")


class NotClosedManifold(BochnerLabError):
    """Exception raised when an operation needs a fully periodic chart."""

    def __init__(self, detail: str = "Operation requires a closed (fully periodic) grid"):
        super().__init__(detail=detail, code="not_closed_manifold")


class DegenerateImmersion(BochnerLabError):
    """Exception raised when the tangent vectors of an immersion lose rank."""

    def __init__(self, node: Tuple[int, ...], singular_value: float):
        super().__init__(
            detail=f"Immersion Jacobian rank-deficient at node {node} "
            f"(smallest singular value {singular_value:.3e})",
            code="degenerate_immersion",
            context={"node": list(node), "singular_value": singular_value},
        )
        self.node = node


class AmbientNotSpaceForm(BochnerLabError):
    """Exception raised when a space-form identity is requested without C."""

    def __init__(self, detail: str = "Ambient constant curvature C is not set"):
        super().__init__(detail=detail, code="ambient_not_space_form")


class HypersurfaceOnly(BochnerLabError):
    """Exception raised when an operation needs codimension one."""

    def __init__(self, codimension: int):
        super().__init__(
            detail=f"Operation requires codimension 1, got {codimension}",
            code="hypersurface_only",
        )


class SolverDiverged(BochnerLabError):
    """Exception raised when an iterative solver stops without converging."""

    exit_code = 3

    def __init__(self, detail: str, stats: Optional[Dict[str, Any]] = None):
        super().__init__(detail=detail, code="solver_diverged", context=stats or {})
        self.stats = stats or {}


class ZeroCrossing(BochnerLabError):
    """Exception raised when a function required to be zero-free vanishes."""

    def __init__(self, node: Sequence[int], value: float):
        super().__init__(
            detail=f"Function vanishes at node {tuple(node)} (|u| = {abs(value):.3e})",
            code="zero_crossing",
            context={"node": list(node), "value": value},
        )
        self.node = tuple(node)
