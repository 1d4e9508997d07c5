"""
📁 File: src/layer0_physics/gaussian.py
Layer: Layer 0 (Physics)
Purpose: Standard Gaussian tail probability (Q-function)
Depends on: numpy, scipy.special
Used by: Layer 1 (KLJN theory), Layer 2 (TherMod theory), Layer 4 (optimization)

Q(x) = P(Z > x) = erfc(x / sqrt(2)) / 2. The deepest argument reached at desk
scale is about 12, well inside double precision, so no log-domain tail is kept.
"""

from typing import overload

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import erfc

from src.shared.errors import DomainError

_SQRT2 = np.sqrt(2.0)


@overload
def q_function(x: float) -> float: ...


@overload
def q_function(x: NDArray[np.float64]) -> NDArray[np.float64]: ...


def q_function(x: ArrayLike) -> float | NDArray[np.float64]:
    """
    Gaussian tail probability P(Z > x) for a standard normal Z.

    Accepts scalars or numpy arrays; scalars come back as plain floats.

    Args:
        x: Argument(s), must be finite

    Returns:
        Tail probability in [0, 1]

    Raises:
        DomainError: If any argument is NaN or infinite
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError(
            "Q-function argument must be finite",
            details={"argument": str(x)[:100]},
        )
    result = 0.5 * erfc(arr / _SQRT2)
    if result.ndim == 0:
        return float(result)
    return result
