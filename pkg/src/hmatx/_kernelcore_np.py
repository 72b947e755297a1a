"""Pure-NumPy kernel evaluation core (fallback backend).

Vectorized pairwise evaluation of the scalar and elastodynamic Green's
kernels over two point sets. The compiled backend in
``_kernelcore_cy.pyx`` implements the same three entry points; which one
is active is decided at import time in :mod:`hmatx.kernels`.

Coincident pairs (r == 0) are replaced by ``self_shift`` times the d x d
identity when ``self_shift`` is given, and reported otherwise.
"""

import numpy as np

FOUR_PI = 4.0 * np.pi


def _pairwise(X, Y):
    Z = X[:, None, :] - Y[None, :, :]
    r = np.sqrt(np.einsum("ijk,ijk->ij", Z, Z))
    return Z, r


def _radial_derivs(kappa, r, order):
    """Derivatives 0..order of exp(i*kappa*r)/(4*pi*r) with respect to r."""
    e = np.exp(1j * kappa * r) / (FOUR_PI * r)
    ik = 1j * kappa
    out = [e]
    if order >= 1:
        out.append(e * (ik - 1.0 / r))
    if order >= 2:
        out.append(e * (-(kappa**2) - 2.0 * ik / r + 2.0 / r**2))
    if order >= 3:
        out.append(e * (-ik * kappa**2 + 3.0 * kappa**2 / r + 6.0 * ik / r**2 - 6.0 / r**3))
    return out


def scalar_block(kappa, X, Y, self_shift=None):
    """(m, n) matrix of exp(i*kappa*r)/(4*pi*r); kappa = 0 gives Laplace."""
    _, r = _pairwise(X, Y)
    self_mask = r == 0.0
    has_self = bool(self_mask.any())
    if has_self:
        if self_shift is None:
            return None
        r = np.where(self_mask, 1.0, r)
    out = np.exp(1j * kappa * r) / (FOUR_PI * r)
    if has_self:
        out[self_mask] = self_shift
    return np.ascontiguousarray(out)


def _elasto_coeffs(kp, ks, scale, r, order):
    """Radial coefficients of the Navier Green's tensor A*I + B*zhat зhat^T.

    With f = G_ks - G_kp (derivatives of e^{ikr}/(4 pi r)):
        A  = scale * (ks^2 G_ks + f'/r)
        B  = scale * (f'' - f'/r)
    ``order >= 1`` additionally returns A' and B' for the traction kernel.
    """
    gs = _radial_derivs(ks, r, order + 2)
    gp = _radial_derivs(kp, r, order + 2)
    f1 = gs[1] - gp[1]
    f2 = gs[2] - gp[2]
    A = scale * (ks**2 * gs[0] + f1 / r)
    B = scale * (f2 - f1 / r)
    if order == 0:
        return A, B
    f3 = gs[3] - gp[3]
    Ap = scale * (ks**2 * gs[1] + (f2 * r - f1) / r**2)
    Bp = scale * (f3 - (f2 * r - f1) / r**2)
    return A, B, Ap, Bp


def _interleave(blocks):
    """(m, n, 3, 3) per-pair blocks -> (3m, 3n) with point-major ordering."""
    m, n = blocks.shape[:2]
    return np.ascontiguousarray(blocks.transpose(0, 2, 1, 3).reshape(3 * m, 3 * n))


def _apply_self(blocks, self_mask, self_shift):
    if not self_mask.any():
        return blocks, True
    if self_shift is None:
        return blocks, False
    blocks[self_mask] = self_shift * np.eye(3)
    return blocks, True


def elasto_u_block(kp, ks, scale, X, Y, self_shift=None):
    """(3m, 3n) displacement Green's tensor; scale = 1/(rho*omega^2)."""
    Z, r = _pairwise(X, Y)
    self_mask = r == 0.0
    r = np.where(self_mask, 1.0, r)
    A, B = _elasto_coeffs(kp, ks, scale, r, order=0)
    zh = Z / r[..., None]
    blocks = A[..., None, None] * np.eye(3) + B[..., None, None] * (
        zh[..., :, None] * zh[..., None, :]
    )
    blocks, ok = _apply_self(blocks, self_mask, self_shift)
    if not ok:
        return None
    return _interleave(blocks)


def elasto_t_block(kp, ks, lam, mu, scale, X, Y, NY, self_shift=None):
    """(3m, 3n) traction Green's tensor with column-side normals NY."""
    Z, r = _pairwise(X, Y)
    self_mask = r == 0.0
    r = np.where(self_mask, 1.0, r)
    A, B, Ap, Bp = _elasto_coeffs(kp, ks, scale, r, order=1)
    zh = Z / r[..., None]
    nn = np.broadcast_to(NY[None, :, :], zh.shape)
    c = np.einsum("ijk,ijk->ij", nn, zh)
    D = Ap + Bp + 2.0 * B / r
    eye = np.eye(3)
    nz = nn[..., :, None] * zh[..., None, :]
    zn = zh[..., :, None] * nn[..., None, :]
    zz = zh[..., :, None] * zh[..., None, :]
    blocks = (
        -lam * D[..., None, None] * nz
        - mu * Ap[..., None, None] * (c[..., None, None] * eye + zn)
        - 2.0 * mu * (Bp * c)[..., None, None] * zz
        - mu
        * (B / r)[..., None, None]
        * (2.0 * nz + zn + c[..., None, None] * eye - 4.0 * c[..., None, None] * zz)
    )
    blocks, ok = _apply_self(blocks, self_mask, self_shift)
    if not ok:
        return None
    return _interleave(blocks)
