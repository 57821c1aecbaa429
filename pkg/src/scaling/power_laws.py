"""
Fonctions d'échelle en loi de puissance, régimes de régularité,
lemme d'itération et régression log-log.
"""

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from src.utils.exceptions import DomainError, InputError

ArrayLike = Union[float, np.ndarray]

ROLES = ('volume', 'walk')


@dataclass(frozen=True)
class PowerScaling:
    """
    Fonction d'échelle r -> coeff * r**exponent.

    Sert pour Phi (rôle 'volume', exposant d_h) et Psi (rôle 'walk',
    exposant beta_p). En loi de puissance les exposants inférieur et
    supérieur coïncident et la constante de doublement vaut 2**exponent.
    """

    exponent: float
    coeff: float = 1.0
    role: str = 'walk'

    def __post_init__(self):
        if not (self.exponent > 0 and math.isfinite(self.exponent)):
            raise DomainError(f"Exposant invalide: {self.exponent}")
        if not (self.coeff > 0 and math.isfinite(self.coeff)):
            raise DomainError(f"Coefficient invalide: {self.coeff}")
        if self.role not in ROLES:
            raise DomainError(f"Rôle inconnu: {self.role}")

    def __call__(self, r: ArrayLike) -> ArrayLike:
        return eval_scaling(self, r)

    @property
    def doubling_constant(self) -> float:
        return 2.0 ** self.exponent

    def to_dict(self) -> dict:
        return {'exp': self.exponent, 'coeff': self.coeff, 'role': self.role}

    @classmethod
    def from_dict(cls, data: dict, role: str = 'walk') -> 'PowerScaling':
        return cls(float(data['exp']), float(data.get('coeff', 1.0)), data.get('role', role))


def eval_scaling(s: PowerScaling, r: ArrayLike) -> ArrayLike:
    """
    Évalue coeff * r**exponent.

    Args:
        s (PowerScaling): Fonction d'échelle
        r (float | np.ndarray): Rayon(s) positif(s) ou nul(s)

    Returns:
        float | np.ndarray: Valeur(s) de la fonction d'échelle

    Raises:
        DomainError: Si un rayon est négatif
    """
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError(f"Rayon négatif ou indéfini: {r}")
    out = s.coeff * np.power(arr, s.exponent)
    if np.ndim(out) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class RegimeReport:
    d_h: float
    beta_p: float
    p: float
    fvr: bool
    rsvr: bool
    svr: bool
    tau: float
    window_ok: bool


def regime(d_h: float, beta_p: float, p: float) -> RegimeReport:
    """
    Classe le couple (d_h, beta_p) selon les régimes FVR / RSVR / SVR.

    Args:
        d_h (float): Dimension de volume
        beta_p (float): Dimension de marche d'ordre p
        p (float): Exposant (> 1)

    Returns:
        RegimeReport: Drapeaux de régime et tau = d_h - beta_p
    """
    if not (d_h > 0 and beta_p > 0 and p > 1):
        raise DomainError(f"Paramètres hors domaine: d_h={d_h}, beta_p={beta_p}, p={p}")
    return RegimeReport(
        d_h=d_h,
        beta_p=beta_p,
        p=p,
        fvr=d_h >= beta_p,
        rsvr=beta_p > d_h - 1.0,
        svr=beta_p > d_h,
        tau=d_h - beta_p,
        window_ok=p <= beta_p <= d_h + (p - 1.0),
    )


@dataclass
class IterationResult:
    """Trajectoire du lemme d'itération A_{j+1} = c0 b^j A_j^{1+beta}."""

    sequence: List[float]
    bounds: List[float]
    threshold: float
    hypothesis: bool
    satisfied: bool
    saturated: bool


# Au-delà, exp() déborde en double précision
_LOG_OVERFLOW = 700.0


def iterate_bound(A0: float, c0: float, b: float, beta: float, jmax: int) -> IterationResult:
    """
    Génère la suite à égalité A_{j+1} = c0 b^j A_j^{1+beta} et vérifie
    la conclusion A_j <= b^{-j/beta} A_0.

    La suite est calculée via le quotient q_j = A_j / (b^{-j/beta} A_0), qui
    vérifie q_{j+1} = (A_0/seuil)^beta q_j^{1+beta} avec q_0 = 1. Au seuil
    exact q_j vaut 1 à toutes les étapes, sans amplification des arrondis.

    Args:
        A0 (float): Valeur initiale (> 0)
        c0 (float): Constante (> 0)
        b (float): Base (> 1)
        beta (float): Exposant (> 0)
        jmax (int): Dernier indice généré (>= 0)

    Returns:
        IterationResult: Trajectoire, bornes et drapeaux
    """
    if not (A0 > 0 and c0 > 0 and b > 1 and beta > 0) or jmax < 0:
        raise DomainError(f"Paramètres invalides: A0={A0}, c0={c0}, b={b}, beta={beta}, jmax={jmax}")

    threshold = c0 ** (-1.0 / beta) * b ** (-1.0 / beta ** 2)
    hypothesis = A0 <= threshold * (1.0 + 1e-12)
    log_s = beta * (math.log(A0) - math.log(threshold))

    sequence, bounds = [], []
    log_q = 0.0
    saturated = False
    for j in range(jmax + 1):
        log_bound = -j / beta * math.log(b) + math.log(A0)
        bounds.append(math.exp(log_bound))
        log_a = log_bound + log_q
        if saturated or log_a > _LOG_OVERFLOW:
            saturated = True
            sequence.append(math.inf)
        else:
            sequence.append(math.exp(log_a))
        log_q = log_s + (1.0 + beta) * log_q

    within = all(a <= bd * (1.0 + 1e-12) for a, bd in zip(sequence, bounds))
    return IterationResult(
        sequence=sequence,
        bounds=bounds,
        threshold=threshold,
        hypothesis=hypothesis,
        satisfied=bool(hypothesis and within),
        saturated=saturated,
    )


@dataclass
class LogLogFit:
    slope: float
    intercept: float
    r_squared: float
    points: List[Tuple[float, float]] = field(default_factory=list)

    def predict(self, r: ArrayLike) -> ArrayLike:
        """Valeur ajustée exp(intercept) * r**slope."""
        return np.exp(self.intercept) * np.power(np.asarray(r, dtype=float), self.slope)


def loglog_fit(pairs: Sequence[Tuple[float, float]]) -> LogLogFit:
    """
    Moindres carrés ordinaires sur (log r, log y).

    Args:
        pairs: Couples (r, y) avec r > 0, y > 0

    Returns:
        LogLogFit: Pente, ordonnée à l'origine, R²

    Raises:
        InputError: Moins de deux r distincts ou valeurs non positives
    """
    data = np.asarray(list(pairs), dtype=float)
    if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] != 2:
        raise InputError("Il faut au moins deux couples (r, y)")
    if np.any(data <= 0) or not np.all(np.isfinite(data)):
        raise InputError("Les valeurs r et y doivent être strictement positives et finies")
    if np.unique(data[:, 0]).size < 2:
        raise InputError("Il faut au moins deux valeurs de r distinctes")

    x = np.log(data[:, 0])
    y = np.log(data[:, 1])
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)

    residual = y - (slope * x + intercept)
    ss_res = float(residual @ residual)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)

    return LogLogFit(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        points=[(float(a), float(c)) for a, c in zip(x, y)],
    )
