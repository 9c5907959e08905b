"""Adam optimizer as a pure function over lists of parameter arrays."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

Params = list[NDArray[np.float64]]


@dataclass(frozen=True, eq=False)
class AdamState:
    """First and second moment estimates, one array per parameter."""

    m: Params
    v: Params

    @classmethod
    def zeros_like(cls, params: Sequence[NDArray[np.float64]]) -> "AdamState":
        return cls(m=[np.zeros_like(p) for p in params], v=[np.zeros_like(p) for p in params])


def adam_step(
    params: Sequence[NDArray[np.float64]],
    grads: Sequence[NDArray[np.float64]],
    state: AdamState,
    t: int,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> tuple[Params, AdamState]:
    """One bias-corrected Adam update; ``t`` is the 1-based step number.

    Inputs are not modified.
    """
    if t < 1:
        raise ValueError(f"Adam step number starts at 1, got {t}")
    if len(params) != len(grads):
        raise ValueError(f"{len(params)} parameter arrays but {len(grads)} gradients")

    correction1 = 1.0 - beta1**t
    correction2 = 1.0 - beta2**t
    new_params: Params = []
    new_m: Params = []
    new_v: Params = []
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if p.shape != g.shape:
            raise ValueError(f"parameter shape {p.shape} != gradient shape {g.shape}")
        m_t = beta1 * m + (1.0 - beta1) * g
        v_t = beta2 * v + (1.0 - beta2) * (g * g)
        m_hat = m_t / correction1
        v_hat = v_t / correction2
        new_params.append(p - lr * m_hat / (np.sqrt(v_hat) + eps))
        new_m.append(m_t)
        new_v.append(v_t)
    return new_params, AdamState(m=new_m, v=new_v)
