//! Eigenvalues, Perron vectors and characteristic polynomials of dense
//! symmetric matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::WeightedSymmetricMatrix;
use crate::weights::{abc_matrix_lenient, edge_weight};

/// Jacobi stops once the off-diagonal Frobenius mass is below
/// `offdiag_tol * ||M||_F`; a Perron result is rejected when
/// `||Mx - rho x|| > residual_tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    pub offdiag_tol: f64,
    pub residual_tol: f64,
    pub max_sweeps: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            offdiag_tol: 1e-12,
            residual_tol: 1e-10,
            max_sweeps: 64,
        }
    }
}

/// Entries below this magnitude with negative sign are treated as rounding
/// noise in Perron vectors.
const PERRON_CLAMP: f64 = 1e-12;

/// Full eigendecomposition, eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub radius: f64,
    /// Unit-norm eigenvector for `radius`, sign-fixed to be nonnegative.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub sweeps: usize,
    /// Zero or reducible matrix: the Perron vector need not be unique or
    /// positive.
    pub degenerate: bool,
}

fn check_symmetric(m: &WeightedSymmetricMatrix) -> Result<()> {
    let asym = m.asymmetry();
    if asym > 1e-12 * m.max_abs().max(1.0) {
        return Err(Error::Contract(format!(
            "eigensolver needs a symmetric matrix (max |m_ij - m_ji| = {asym:e})"
        )));
    }
    Ok(())
}

/// Cyclic Jacobi rotations on a full dense copy of `m`.
pub fn jacobi(m: &WeightedSymmetricMatrix, config: &SpectralConfig) -> Result<EigenDecomposition> {
    check_symmetric(m)?;
    let n = m.order();
    let mut a = m.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = config.offdiag_tol * m.frobenius_norm();
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let mass = off(&a);
        if mass <= threshold {
            break;
        }
        if sweeps == config.max_sweeps {
            return Err(Error::Numeric {
                sweeps,
                residual: mass,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    Ok(EigenDecomposition {
        values: idx.iter().map(|&i| a[i * n + i]).collect(),
        vectors: idx
            .iter()
            .map(|&i| (0..n).map(|k| v[k * n + i]).collect())
            .collect(),
        sweeps,
    })
}

/// All eigenvalues in descending order.
pub fn eigen_spectrum(m: &WeightedSymmetricMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(m, &SpectralConfig::default())?.values)
}

pub fn perron_result(m: &WeightedSymmetricMatrix) -> Result<SpectralResult> {
    perron_result_with(m, &SpectralConfig::default())
}

pub fn perron_result_with(
    m: &WeightedSymmetricMatrix,
    config: &SpectralConfig,
) -> Result<SpectralResult> {
    let n = m.order();
    if n == 0 {
        return Err(Error::Contract("order-0 matrix has no spectral radius".into()));
    }
    let eig = jacobi(m, config)?;
    let radius = eig.values[0];
    let mut x = eig.vectors[0].clone();
    let lead = x
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(0.0);
    if lead < 0.0 {
        x.iter_mut().for_each(|c| *c = -*c);
    }
    for c in &mut x {
        if *c < 0.0 && *c > -PERRON_CLAMP {
            *c = 0.0;
        }
    }
    let mx = m.mul_vec(&x);
    let residual = mx
        .iter()
        .zip(&x)
        .map(|(a, b)| (a - radius * b).powi(2))
        .sum::<f64>()
        .sqrt();
    if residual > config.residual_tol {
        return Err(Error::Numeric {
            sweeps: eig.sweeps,
            residual,
        });
    }
    Ok(SpectralResult {
        radius,
        vector: x,
        residual,
        sweeps: eig.sweeps,
        degenerate: m.max_abs() == 0.0 || !m.is_irreducible(),
    })
}

pub fn spectral_radius(m: &WeightedSymmetricMatrix) -> Result<f64> {
    Ok(perron_result(m)?.radius)
}

/// `det(lambda I - m)` by Gaussian elimination with partial pivoting. The
/// order-0 matrix gives 1.
pub fn charpoly_eval(m: &WeightedSymmetricMatrix, lambda: f64) -> f64 {
    let n = m.order();
    let mut a: Vec<f64> = m.as_slice().iter().map(|x| -x).collect();
    for i in 0..n {
        a[i * n + i] += lambda;
    }
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .expect("non-empty range");
        let p = a[pivot * n + col];
        if p == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        det *= p;
        for i in col + 1..n {
            let factor = a[i * n + col] / p;
            if factor != 0.0 {
                for k in col..n {
                    a[i * n + k] -= factor * a[col * n + k];
                }
            }
        }
    }
    det
}

/// Rows and columns of `m` restricted to `subset`, in the given order.
pub fn submatrix(m: &WeightedSymmetricMatrix, subset: &[usize]) -> Result<WeightedSymmetricMatrix> {
    let n = m.order();
    let mut seen = vec![false; n];
    for &i in subset {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Contract(format!(
                "submatrix index {i} is out of range for order {n} or repeated"
            )));
        }
    }
    let k = subset.len();
    let mut data = Vec::with_capacity(k * k);
    for &i in subset {
        for &j in subset {
            data.push(m.get(i, j));
        }
    }
    Ok(WeightedSymmetricMatrix::from_row_major_unchecked(k, data))
}

/// Default seed for the random part of [`LambdaSamples::standard`].
pub const DEFAULT_SEED: u64 = 0x0abc_2020;

/// Evaluation points for polynomial identity checks.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSamples(pub Vec<f64>);

impl LambdaSamples {
    pub const GRID: [f64; 9] = [-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0];

    /// The fixed grid plus 16 uniform draws from `[-4, 4]`.
    pub fn standard(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Self::GRID.to_vec();
        points.extend((0..16).map(|_| rng.gen_range(-4.0..=4.0)));
        LambdaSamples(points)
    }

    /// `count` uniform draws from `[lo, hi]`.
    pub fn uniform(count: usize, lo: f64, hi: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        LambdaSamples((0..count).map(|_| rng.gen_range(lo..=hi)).collect())
    }
}

fn max_defect(samples: &LambdaSamples, defect: impl Fn(f64) -> f64) -> f64 {
    samples.0.iter().map(|&l| defect(l).abs()).fold(0.0, f64::max)
}

/// Max over samples of `|P(M, l) - P(M_G, l) P(M_H, l)|` with
/// `M = M(G u H)`. Isolated vertices (e.g. a `K_1` part) get zero rows.
pub fn verify_union_identity(g: &Graph, h: &Graph, samples: &LambdaSamples) -> f64 {
    let union = g.disjoint_union(h);
    let m = abc_matrix_lenient(&union);
    let ng = g.order();
    let gs: Vec<usize> = (0..ng).collect();
    let hs: Vec<usize> = (ng..union.order()).collect();
    let mg = submatrix(&m, &gs).expect("indices in range");
    let mh = submatrix(&m, &hs).expect("indices in range");
    max_defect(samples, |l| {
        charpoly_eval(&m, l) - charpoly_eval(&mg, l) * charpoly_eval(&mh, l)
    })
}

/// Max over samples of the defect in
/// `P(M) = P(M_G) P(M_H) - f(d(u), d(v))^2 P(M_{G-u}) P(M_{H-v})`, with
/// `M = M(G(u,v)H)` and every factor a submatrix of `M`.
pub fn verify_join_identity(
    g: &Graph,
    u: usize,
    h: &Graph,
    v: usize,
    samples: &LambdaSamples,
) -> Result<f64> {
    let joined = g.join_at(u, h, v)?;
    let m = abc_matrix_lenient(&joined);
    let ng = g.order();
    let vj = ng + v;
    let f = edge_weight(joined.degree(u), joined.degree(vj))?;
    let gs: Vec<usize> = (0..ng).collect();
    let hs: Vec<usize> = (ng..joined.order()).collect();
    let g_minus: Vec<usize> = (0..ng).filter(|&i| i != u).collect();
    let h_minus: Vec<usize> = (ng..joined.order()).filter(|&i| i != vj).collect();
    let [mg, mh, mgu, mhv] = [&gs, &hs, &g_minus, &h_minus].map(|s| submatrix(&m, s).expect("indices in range"));
    Ok(max_defect(samples, |l| {
        let rhs = charpoly_eval(&mg, l) * charpoly_eval(&mh, l)
            - f * f * charpoly_eval(&mgu, l) * charpoly_eval(&mhv, l);
        charpoly_eval(&m, l) - rhs
    }))
}
