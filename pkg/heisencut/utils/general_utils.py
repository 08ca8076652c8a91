# /utils/general_utils.py
# Created On: Oct 19, 2026
#
from datetime import datetime, timezone

import numpy as np
import pytz
from tzlocal import get_localzone_name


def utcnow():
    """Current UTC time as an aware ``datetime``."""
    return datetime.now(timezone.utc)


def convert_utc_to_local_str(dt, show_time: bool = True):
    """
    Render an aware UTC datetime in the local timezone, e.g.
    ``Mon, 19 Oct 2026 09:14 AM (Asia/Kolkata)``. Falls back to UTC when the
    system timezone cannot be determined.
    """
    try:
        tz_name = get_localzone_name()
        tz = pytz.timezone(tz_name)
    except Exception:
        tz_name, tz = 'UTC', pytz.utc

    dt_local = dt.astimezone(tz)
    local_format = dt_local.strftime("%a, %d %b %Y")
    if show_time:
        local_format += dt_local.strftime(f" %I:%M %p ({tz_name})")
    return local_format


def make_rng(seed):
    return np.random.default_rng(seed)


def random_hermitian(dim, rng, traceless=False):
    """
    Gaussian Hermitian ``dim x dim`` matrix, normalised to Frobenius norm 1.

    Args:
        dim (int): Matrix side length.
        rng (numpy.random.Generator): Source of randomness.
        traceless (bool): Remove the identity component before normalising.

    Returns:
        numpy.ndarray: The random matrix.
    """
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = (g + g.conj().T) / 2
    if traceless:
        h = h - np.trace(h).real / dim * np.eye(dim)
    return h / np.linalg.norm(h)


def random_unitary(dim, rng):
    """Haar random unitary (QR of a complex Ginibre matrix with phase fix)."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_state(dim, rng):
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def random_interaction(dim_c, dim_s, rng, n_terms=2):
    """
    Random stripped interaction ``sum_j A_j (x) B_j`` with Gaussian traceless
    local factors, the generic case of the structure theorem.

    Returns:
        numpy.ndarray: The ``dim_c*dim_s`` square matrix.
    """
    h = np.zeros((dim_c * dim_s, dim_c * dim_s), dtype=complex)
    for _ in range(n_terms):
        a = random_hermitian(dim_c, rng, traceless=True)
        b = random_hermitian(dim_s, rng, traceless=True)
        h += np.kron(a, b)
    return h
