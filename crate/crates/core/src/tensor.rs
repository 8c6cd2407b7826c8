//! Symmetric 2x2 tensor algebra with closed-form spectral decomposition and
//! the fourth-order operators used by the tension/compression material split.
//!
//! Conventions:
//! - `SymTensor2` stores the independent components (xx, yy, xy) of a
//!   symmetric second-order tensor in whatever frame the caller works in.
//! - Eigenvalues are ordered `e1 >= e2`. Eigenvectors are unit length and
//!   sign-normalized so the first nonzero component is positive (ties broken
//!   by the second component), which keeps decompositions reproducible.
//! - Fourth-order operators are stored with all 16 components so contraction
//!   needs no symmetry bookkeeping.

/// Symmetric second-order tensor in two dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymTensor2 {
    pub xx: f64,
    pub yy: f64,
    pub xy: f64,
}

impl SymTensor2 {
    pub const ZERO: Self = Self { xx: 0.0, yy: 0.0, xy: 0.0 };

    pub fn new(xx: f64, yy: f64, xy: f64) -> Self {
        Self { xx, yy, xy }
    }

    pub fn identity() -> Self {
        Self { xx: 1.0, yy: 1.0, xy: 0.0 }
    }

    /// Rank-one tensor n (x) n from a direction vector.
    pub fn outer(n: [f64; 2]) -> Self {
        Self { xx: n[0] * n[0], yy: n[1] * n[1], xy: n[0] * n[1] }
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy
    }

    pub fn det(&self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { xx: self.xx + other.xx, yy: self.yy + other.yy, xy: self.xy + other.xy }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { xx: self.xx - other.xx, yy: self.yy - other.yy, xy: self.xy - other.xy }
    }

    pub fn scale(&self, f: f64) -> Self {
        Self { xx: f * self.xx, yy: f * self.yy, xy: f * self.xy }
    }

    /// Double contraction A : B (both symmetric, off-diagonal counted twice).
    pub fn ddot(&self, other: &Self) -> f64 {
        self.xx * other.xx + self.yy * other.yy + 2.0 * self.xy * other.xy
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.ddot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.xx.abs().max(self.yy.abs()).max(self.xy.abs())
    }

    /// Closed-form eigendecomposition. Always succeeds for finite input;
    /// coincident eigenvalues fall back to the coordinate axes.
    pub fn spectral(&self) -> Spectral2 {
        let mean = 0.5 * (self.xx + self.yy);
        let half_diff = 0.5 * (self.xx - self.yy);
        let disc = (half_diff * half_diff + self.xy * self.xy).sqrt();
        let e1 = mean + disc;
        let e2 = mean - disc;

        if disc == 0.0 {
            return Spectral2 { e1, e2, n1: [1.0, 0.0], n2: [0.0, 1.0] };
        }

        // Two candidate eigenvectors for e1; pick the better conditioned one.
        let u = [self.xy, e1 - self.xx];
        let v = [e1 - self.yy, self.xy];
        let nu = u[0] * u[0] + u[1] * u[1];
        let nv = v[0] * v[0] + v[1] * v[1];
        let raw = if nv >= nu { v } else { u };
        let len = (raw[0] * raw[0] + raw[1] * raw[1]).sqrt();
        let n1 = canonical_sign([raw[0] / len, raw[1] / len]);
        let n2 = canonical_sign([-n1[1], n1[0]]);
        Spectral2 { e1, e2, n1, n2 }
    }
}

/// Flip a unit vector so its first nonzero component is positive.
fn canonical_sign(v: [f64; 2]) -> [f64; 2] {
    let flip = if v[0] != 0.0 { v[0] < 0.0 } else { v[1] < 0.0 };
    if flip {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Spectral decomposition of a symmetric 2x2 tensor: A = e1 n1(x)n1 + e2 n2(x)n2.
#[derive(Debug, Clone, Copy)]
pub struct Spectral2 {
    pub e1: f64,
    pub e2: f64,
    pub n1: [f64; 2],
    pub n2: [f64; 2],
}

impl Spectral2 {
    /// Eigenprojection M1 = n1 (x) n1.
    pub fn basis1(&self) -> SymTensor2 {
        SymTensor2::outer(self.n1)
    }

    /// Eigenprojection M2 = n2 (x) n2.
    pub fn basis2(&self) -> SymTensor2 {
        SymTensor2::outer(self.n2)
    }

    pub fn reconstruct(&self) -> SymTensor2 {
        self.basis1().scale(self.e1).add(&self.basis2().scale(self.e2))
    }
}

/// Macaulay bracket split: returns (<x>+, <x>-) with <x>+ + <x>- = x.
pub fn macaulay(x: f64) -> (f64, f64) {
    (0.5 * (x + x.abs()), 0.5 * (x - x.abs()))
}

/// Unit step with H(x) = 1 for x > 0 and 0 otherwise (including x = 0).
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Tensile/compressive parts of a decomposed tensor:
/// A+- = <e1>+- n1(x)n1 + <e2>+- n2(x)n2. The parts sum back to A.
pub fn split_tensor(sp: &Spectral2) -> (SymTensor2, SymTensor2) {
    let (p1, m1) = macaulay(sp.e1);
    let (p2, m2) = macaulay(sp.e2);
    let b1 = sp.basis1();
    let b2 = sp.basis2();
    (b1.scale(p1).add(&b2.scale(p2)), b1.scale(m1).add(&b2.scale(m2)))
}

/// Fourth-order tensor on 2D space, stored with all 16 components.
/// Constructors used by the material tangents produce operators with minor
/// symmetry; `sym_kronecker` alone does not, but the combinations assembled
/// from it do.
#[derive(Debug, Clone, Copy)]
pub struct Tensor4 {
    c: [[[[f64; 2]; 2]; 2]; 2],
}

impl Tensor4 {
    pub const ZERO: Self = Self { c: [[[[0.0; 2]; 2]; 2]; 2] };

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.c[i][j][k][l]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        self.c[i][j][k][l] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.c[i][j][k][l] = self.c[i][j][k][l] + other.c[i][j][k][l];
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, f: f64) -> Self {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.c[i][j][k][l] *= f;
                    }
                }
            }
        }
        out
    }

    /// Double contraction (C : A)_ij = C_ijkl A_kl. The result is
    /// symmetrized; it is exact whenever C has minor symmetry.
    pub fn ddot(&self, a: &SymTensor2) -> SymTensor2 {
        let am = [[a.xx, a.xy], [a.xy, a.yy]];
        let mut b = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0.0;
                for k in 0..2 {
                    for l in 0..2 {
                        s += self.c[i][j][k][l] * am[k][l];
                    }
                }
                b[i][j] = s;
            }
        }
        SymTensor2 { xx: b[0][0], yy: b[1][1], xy: 0.5 * (b[0][1] + b[1][0]) }
    }

    /// Trace operator J with J : A = tr(A) I, i.e. J_ijkl = d_ij d_kl.
    pub fn trace_op() -> Self {
        let mut out = Self::ZERO;
        for i in 0..2 {
            for k in 0..2 {
                out.c[i][i][k][k] = 1.0;
            }
        }
        out
    }

    /// Symmetric fourth-order identity: I_ijkl = (d_ik d_jl + d_il d_jk)/2.
    pub fn sym_identity() -> Self {
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        let mut out = Self::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.c[i][j][k][l] = 0.5 * (d(i, k) * d(j, l) + d(i, l) * d(j, k));
                    }
                }
            }
        }
        out
    }

    /// Projector Q onto the eigenbasis tensor M = n(x)n:
    /// Q_ijkl = M_kl M_ij, so Q : A = (M : A) M.
    pub fn dyadic_projector(m: &SymTensor2) -> Self {
        let mm = [[m.xx, m.xy], [m.xy, m.yy]];
        let mut out = Self::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.c[i][j][k][l] = mm[k][l] * mm[i][j];
                    }
                }
            }
        }
        out
    }

    /// Symmetrized Kronecker-style product of two eigenprojections:
    /// (Ma, Mb)_ijkl = Ma_ik Mb_jl + Ma_il Mb_jk.
    pub fn sym_kronecker(ma: &SymTensor2, mb: &SymTensor2) -> Self {
        let a = [[ma.xx, ma.xy], [ma.xy, ma.yy]];
        let b = [[mb.xx, mb.xy], [mb.xy, mb.yy]];
        let mut out = Self::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.c[i][j][k][l] = a[i][k] * b[j][l] + a[i][l] * b[j][k];
                    }
                }
            }
        }
        out
    }

    pub fn is_minor_symmetric(&self, tol: f64) -> bool {
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let v = self.c[i][j][k][l];
                        if (v - self.c[j][i][k][l]).abs() > tol
                            || (v - self.c[i][j][l][k]).abs() > tol
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m = m.max(self.c[i][j][k][l].abs());
                    }
                }
            }
        }
        m
    }
}
