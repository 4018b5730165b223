//! Stationary Gaussian state: Lyapunov covariance, physicality checks,
//! Wigner-function marginals and the quadrature-squeezing witness.

use crate::model::LinearModel;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector, Matrix2, Matrix4, SMatrix};

const RESIDUAL_REL_BOUND: f64 = 1e-10;

/// Stationary symmetrized covariance of `(dq, dp, dq_m, dp_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    pub matrix: Matrix4<f64>,
}

/// Which 2-D marginal of the 4-D Wigner function to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraturePair {
    /// `(dq, dp)` - the optical mode.
    Optical,
    /// `(dq_m, dp_m)` - the mechanical mode.
    Mechanical,
    /// `(dq, dq_m)` - optical amplitude against mechanical position.
    Cross,
}

impl QuadraturePair {
    fn indices(self) -> (usize, usize) {
        match self {
            QuadraturePair::Optical => (0, 1),
            QuadraturePair::Mechanical => (2, 3),
            QuadraturePair::Cross => (0, 2),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QuadraturePair::Optical => "optical",
            QuadraturePair::Mechanical => "mechanical",
            QuadraturePair::Cross => "cross",
        }
    }
}

impl std::str::FromStr for QuadraturePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optical" => Ok(QuadraturePair::Optical),
            "mechanical" => Ok(QuadraturePair::Mechanical),
            "cross" => Ok(QuadraturePair::Cross),
            other => Err(Error::Validation(format!(
                "pair must be optical, mechanical or cross, got `{other}`"
            ))),
        }
    }
}

/// 1/e contour of a 2-D Gaussian marginal.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerProjection {
    pub pair: QuadraturePair,
    /// Marginal 2x2 covariance.
    pub covariance: Matrix2<f64>,
    /// Semi-axes `sqrt(2 lambda)` of the 1/e contour, minor then major.
    pub semi_minor: f64,
    pub semi_major: f64,
    /// Orientation of the minor axis, in `[0, pi)`. Zero for degenerate
    /// (circular) marginals.
    pub angle: f64,
}

/// Solve `A V + V A^T = -D` by vectorizing to a 16x16 linear system.
///
/// Refuses unstable models and any solution whose residual exceeds
/// `1e-10 ||D||_F`.
pub fn solve_lyapunov(model: &LinearModel) -> Result<CovarianceMatrix> {
    let stab = crate::model::stability_check(model);
    if !stab.stable {
        return Err(Error::Unstable {
            abscissa: stab.abscissa,
        });
    }

    let a = DMatrix::from_fn(4, 4, |i, j| model.drift[(i, j)]);
    let eye = DMatrix::<f64>::identity(4, 4);
    // column-major vec: vec(A V) = (I (x) A) vec V, vec(V A^T) = (A (x) I) vec V
    let system = eye.kronecker(&a) + a.kronecker(&eye);
    let rhs = DVector::from_fn(16, |k, _| -model.diffusion[(k % 4, k / 4)]);
    let lu = system.lu();
    let sol = lu.solve(&rhs).ok_or(Error::Singular { omega: 0.0 })?;

    let mut v = Matrix4::from_fn(|i, j| sol[j * 4 + i]);
    v = (v + v.transpose()) * 0.5;

    let cov = CovarianceMatrix { matrix: v };
    let residual = cov.residual(model);
    let bound = RESIDUAL_REL_BOUND * frobenius(&model.diffusion);
    if residual > bound {
        return Err(Error::ResidualExceeded { residual, bound });
    }
    Ok(cov)
}

fn frobenius(m: &Matrix4<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl CovarianceMatrix {
    /// Frobenius norm of `A V + V A^T + D`.
    pub fn residual(&self, model: &LinearModel) -> f64 {
        let r = model.drift * self.matrix + self.matrix * model.drift.transpose() + model.diffusion;
        frobenius(&r)
    }

    /// Smallest eigenvalue of the Hermitian matrix `V + (i/2) Sigma`, where
    /// `Sigma` is the symplectic form. Nonnegative (within tolerance) iff the
    /// state satisfies the Heisenberg uncertainty relation.
    ///
    /// Computed through the real 8x8 embedding `[[V, -Sigma/2], [Sigma/2, V]]`
    /// whose spectrum doubles that of the Hermitian matrix.
    pub fn physicality_min_eigenvalue(&self) -> f64 {
        let v = &self.matrix;
        let s = symplectic_form() * 0.5;
        let mut big = SMatrix::<f64, 8, 8>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                big[(i, j)] = v[(i, j)];
                big[(i + 4, j + 4)] = v[(i, j)];
                big[(i, j + 4)] = -s[(i, j)];
                big[(i + 4, j)] = s[(i, j)];
            }
        }
        let eig = big.symmetric_eigen();
        eig.eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn block(&self, pair: QuadraturePair) -> Matrix2<f64> {
        let (i, j) = pair.indices();
        Matrix2::new(
            self.matrix[(i, i)],
            self.matrix[(i, j)],
            self.matrix[(j, i)],
            self.matrix[(j, j)],
        )
    }
}

#[rustfmt::skip]
fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, -1.0, 0.0,
    )
}

/// Gaussian marginalization: delete the complementary rows/columns, then
/// diagonalize the 2x2 block into the 1/e contour ellipse.
pub fn wigner_projection(cov: &CovarianceMatrix, pair: QuadraturePair) -> Result<WignerProjection> {
    let v2 = cov.block(pair);
    let det = v2[(0, 0)] * v2[(1, 1)] - v2[(0, 1)] * v2[(1, 0)];
    if v2[(0, 0)] <= 0.0 || det <= 0.0 {
        return Err(Error::Validation(
            "marginal covariance is not positive definite".to_string(),
        ));
    }
    let eig = v2.symmetric_eigen();
    // ascending order of eigenvalues
    let (lo, hi, vec_lo) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (
            eig.eigenvalues[0],
            eig.eigenvalues[1],
            eig.eigenvectors.column(0).into_owned(),
        )
    } else {
        (
            eig.eigenvalues[1],
            eig.eigenvalues[0],
            eig.eigenvectors.column(1).into_owned(),
        )
    };
    let angle = if (hi - lo) / hi < 1e-12 {
        0.0
    } else {
        vec_lo[1].atan2(vec_lo[0]).rem_euclid(std::f64::consts::PI)
    };
    Ok(WignerProjection {
        pair,
        covariance: v2,
        semi_minor: (2.0 * lo).sqrt(),
        semi_major: (2.0 * hi).sqrt(),
        angle,
    })
}

impl WignerProjection {
    /// Normalized marginal Wigner density at `(x, y)`.
    pub fn density(&self, x: f64, y: f64) -> f64 {
        let v = &self.covariance;
        let det = v[(0, 0)] * v[(1, 1)] - v[(0, 1)] * v[(1, 0)];
        let inv = Matrix2::new(v[(1, 1)], -v[(0, 1)], -v[(1, 0)], v[(0, 0)]) / det;
        let quad =
            x * (inv[(0, 0)] * x + inv[(0, 1)] * y) + y * (inv[(1, 0)] * x + inv[(1, 1)] * y);
        (-0.5 * quad).exp() / (std::f64::consts::TAU * det.sqrt())
    }
}

/// Smallest eigenvalue of the optical block, plus whether it is genuinely
/// below the vacuum variance 1/2.
pub fn quadrature_squeezing_witness(cov: &CovarianceMatrix) -> (f64, bool) {
    let block = cov.block(QuadraturePair::Optical);
    let eig = block.symmetric_eigen();
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    (min, min < 0.5 - 1e-9)
}
