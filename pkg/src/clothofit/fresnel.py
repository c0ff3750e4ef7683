"""Fresnel integrals and their momenta.

The pi/2-normalized convention is used throughout:

    C(t) = int_0^t cos(pi/2 u^2) du,      S(t) = int_0^t sin(pi/2 u^2) du,

and the momenta weight the integrand by a power of u:

    C_k(t) = int_0^t u^k cos(pi/2 u^2) du,   S_k(t) likewise with sin.

C_0, S_0 are evaluated from a Maclaurin series for |t| <= 1.6 and from
the auxiliary-function asymptotic form

    C(t) = 1/2 + f(t) sin(pi/2 t^2) - g(t) cos(pi/2 t^2)
    S(t) = 1/2 - f(t) cos(pi/2 t^2) - g(t) sin(pi/2 t^2)

for larger arguments, with f and g approximated by rationals in
1/(pi t^2)^2 (coefficients from the Cephes library's fresnl).
Momenta above order zero reduce to elementary functions plus C_0, S_0;
orders are capped at 3 because the upward recurrence loses accuracy.
"""

import math
from dataclasses import dataclass

__all__ = ["FresnelMomenta", "fresnel", "fresnel_momenta"]

_SERIES_CUTOFF = 1.6
# Above this the oscillation amplitude 1/(pi t) is below 1e-14 and both
# integrals are 1/2 to the advertised absolute accuracy.
_LIMIT_CUTOFF = 1e14

# Veltkamp splitter and a two-double representation of pi/2, used to carry
# the phase (pi/2) t^2 beyond plain double precision.
_SPLIT = 134217729.0
_PIO2_HI = 1.5707963267948966
_PIO2_LO = 6.123233995736766e-17

# Cephes rational fits for the auxiliary functions, highest degree first.
_FN = (
    4.21543555043677546506e-1, 1.43407919780758885261e-1,
    1.15220955073585758835e-2, 3.45017939782574027900e-4,
    4.63613749287867322088e-6, 3.05568983790257605827e-8,
    1.02304514164907233465e-10, 1.72010743268161828879e-13,
    1.34283276233062758925e-16, 3.76329711269987889006e-20,
)
_FD = (
    1.0,
    7.51586398353378947175e-1, 1.16888925859191382142e-1,
    6.44051526508858611005e-3, 1.55934409164153020873e-4,
    1.84627567348930545870e-6, 1.12699224763999035261e-8,
    3.60140029589371370404e-11, 5.88754533621578410010e-14,
    4.52001434074129701496e-17, 1.25443237090011264384e-20,
)
_GN = (
    5.04442073643383265887e-1, 1.97102833525523411709e-1,
    1.87648584092575249293e-2, 6.84079380915393090172e-4,
    1.15138826111884280931e-5, 9.82852443688422223854e-8,
    4.45344415861750144738e-10, 1.08268041139020870318e-12,
    1.37555460633261799868e-15, 8.36354435630677421531e-19,
    1.86958710162783235106e-22,
)
_GD = (
    1.0,
    1.47495759925128324529e0, 3.37748989120019970451e-1,
    2.53603741420338795122e-2, 8.14679107184306179049e-4,
    1.27545075667729118702e-5, 1.04314589657571990585e-7,
    4.60680728146520428211e-10, 1.10273215066240270757e-12,
    1.38796531259578871258e-15, 8.39158816283118707363e-19,
    1.86958710162783236342e-22,
)


def _polevl(x, coef):
    r = coef[0]
    for c in coef[1:]:
        r = r * x + c
    return r


def _two_prod(a, b):
    """a * b as a rounded product plus exact error term."""
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _phase_sincos(x):
    """sin and cos of (pi/2) x^2, phase carried in two doubles.

    A plain double product drops ~x^2 * eps radians of phase, which
    dominates the error of the asymptotic branch for large x.  Splitting
    the square and pi/2 and folding the residual in by angle addition
    keeps the phase of the exact input accurate to ~1e-32 relative.
    """
    sq, sq_err = _two_prod(x, x)
    ph, ph_err = _two_prod(_PIO2_HI, sq)
    tail = ph_err + _PIO2_LO * sq + _PIO2_HI * sq_err
    sh = math.sin(ph)
    ch = math.cos(ph)
    st = math.sin(tail)
    ct = math.cos(tail)
    return sh * ct + ch * st, ch * ct - sh * st


@dataclass(frozen=True)
class FresnelMomenta:
    """Momenta C_0..C_k, S_0..S_k evaluated at one argument t."""

    t: float
    C: tuple
    S: tuple
    k: int


def fresnel(t: float):
    """Evaluate the Fresnel integrals.

    Parameters
    ----------
    t : float
        Finite argument, any sign (both integrals are odd).

    Returns
    -------
    (C, S) : pair of float
        Relative accuracy is ~1e-15 for |t| <= 10 and absolute ~1e-15
        beyond, where both values approach 1/2.
    """
    if not math.isfinite(t):
        raise ValueError("fresnel: argument must be finite, got %r" % (t,))
    x = abs(t)
    if x <= _SERIES_CUTOFF:
        # Maclaurin series in u = (pi/2) x^2; alternating, converges in
        # at most ~18 terms at the cutoff.
        u = 0.5 * math.pi * x * x
        u2 = u * u
        cterm = 1.0
        sterm = u
        cs = 1.0
        ss = u / 3.0
        n = 1
        while n < 60:
            cterm *= -u2 / ((2 * n - 1) * (2 * n))
            sterm *= -u2 / ((2 * n) * (2 * n + 1))
            dc = cterm / (4 * n + 1)
            ds = sterm / (4 * n + 3)
            cs += dc
            ss += ds
            n += 1
            if abs(dc) <= 1e-18 * abs(cs) and abs(ds) <= 1e-18 * abs(ss):
                break
        cc = x * cs
        sv = x * ss
    elif x > _LIMIT_CUTOFF:
        cc = 0.5
        sv = 0.5
    else:
        x2 = x * x
        pix2 = math.pi * x2
        u = 1.0 / (pix2 * pix2)
        f = 1.0 - u * _polevl(u, _FN) / _polevl(u, _FD)
        g = _polevl(u, _GN) / (_polevl(u, _GD) * pix2)
        s, c = _phase_sincos(x)
        pix = math.pi * x
        cc = 0.5 + (f * s - g * c) / pix
        sv = 0.5 - (f * c + g * s) / pix
    if t < 0.0:
        cc = -cc
        sv = -sv
    return cc, sv


def _momenta(t, kmax):
    """C_0..C_kmax and S_0..S_kmax as plain lists, kmax in 0..3."""
    c0, s0 = fresnel(t)
    C = [c0]
    S = [s0]
    if kmax >= 1:
        sz, cz = _phase_sincos(t)
        C.append(sz / math.pi)
        S.append((1.0 - cz) / math.pi)
        if kmax >= 2:
            C.append((t * sz - s0) / math.pi)
            S.append((c0 - t * cz) / math.pi)
        if kmax >= 3:
            # one step of the integration-by-parts recurrence
            C.append((t * t * sz - 2.0 * S[1]) / math.pi)
            S.append((2.0 * C[1] - t * t * cz) / math.pi)
    return C, S


def fresnel_momenta(t: float, k: int) -> FresnelMomenta:
    """Evaluate C_0..C_k and S_0..S_k at t.

    Orders are limited to k <= 3: the recurrence that generates higher
    momenta amplifies rounding errors, and nothing downstream needs them.
    """
    if not math.isfinite(t):
        raise ValueError("fresnel_momenta: argument must be finite, got %r" % (t,))
    if not isinstance(k, int) or not 0 <= k <= 3:
        raise ValueError("fresnel_momenta: order k must be an int in 0..3, got %r" % (k,))
    C, S = _momenta(t, k)
    return FresnelMomenta(t=t, C=tuple(C), S=tuple(S), k=k)
