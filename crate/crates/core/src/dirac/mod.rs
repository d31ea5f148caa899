//! Cubic Dirac operators on `W_lambda ⊗ S_p`, the square formula, kernels,
//! and the spectral model of the loop-group operator.

pub mod affine;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

pub use affine::{
    affine_isotypic_spectrum, class_point, kernel_energy, quantize_conjugacy_class, IndexVector, IsotypicComponent,
    LambdaEvidence, QuantizeReport,
};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};
use crate::repthy::matrices::{IrrepMatrices, LieAlgebra};
use crate::repthy::{branch_graded, irrep_weights, SubgroupRoots, WeightMultiset};
use crate::rootsys::{CentralizerData, RootSystem, Weight};
use crate::spinor::{finite_spinor_module, OperatorMatrix, Polarization, SpinorSpace, C64};

/// Tolerances and size limits for the matrix computations.
#[derive(Debug, Clone, Copy)]
pub struct DiracConfig {
    pub cap: usize,
    /// Eigenvalues of `D^2` below this are kernel.
    pub kernel_tol: f64,
    /// Eigenvalues in `[kernel_tol, ambiguity_tol)` are flagged.
    pub ambiguity_tol: f64,
}

impl Default for DiracConfig {
    fn default() -> Self {
        DiracConfig {
            cap: 20_000,
            kernel_tol: 1e-8,
            ambiguity_tol: 1e-6,
        }
    }
}

/// A Dirac-type operator on `W ⊗ S` together with its grading data.
#[derive(Debug, Clone)]
pub struct DiracMatrix {
    pub op: OperatorMatrix,
    /// Highest weight of `W` (of the dual when built on `W*`).
    pub highest: Weight,
    /// Weight of each tensor basis vector.
    pub weights: Vec<Weight>,
    /// Spinor parity of each tensor basis vector.
    pub parity: Vec<u8>,
    pub rep_dim: usize,
    pub spinor_dim: usize,
}

impl DiracMatrix {
    pub fn dim(&self) -> usize {
        self.op.dim
    }

    /// Index sets of the `(weight, parity)` blocks, which `D^2` preserves.
    pub fn blocks(&self) -> BTreeMap<(Weight, u8), Vec<usize>> {
        let mut b: BTreeMap<(Weight, u8), Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            b.entry((self.weights[i].clone(), self.parity[i])).or_default().push(i);
        }
        b
    }

    pub fn self_adjoint_deviation(&self) -> f64 {
        self.op.sub(&self.op.adjoint()).max_abs()
    }

    /// Largest entry connecting vectors of equal parity (zero for odd operators).
    pub fn even_part(&self) -> f64 {
        self.op
            .triplets()
            .filter(|(r, c, _)| self.parity[*r] == self.parity[*c])
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }
}

fn polarization(cz: Option<&CentralizerData>) -> Result<Polarization<'_>> {
    match cz {
        None => Ok(Polarization::Full),
        Some(c) => {
            c.require_finite()?;
            Ok(Polarization::Relative(c))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cubic {
    /// `1/3 sum ad(Z) c(Z*)`
    Algebraic,
    /// `1/2 sum c(Z*) ad(Z)` from the spin connection
    Geometric,
    None,
}

fn representation(rs: &RootSystem, la: &LieAlgebra, lam: &Weight, dual: bool) -> Result<(IrrepMatrices, Vec<DMatrix<f64>>, Vec<Weight>)> {
    let rep = IrrepMatrices::new(rs, lam)?;
    let mut mats = rep.basis_matrices(rs, la);
    let mut weights = rep.weights.clone();
    if dual {
        for m in mats.iter_mut() {
            *m = -m.transpose();
        }
        weights = weights.iter().map(|w| -w).collect();
    }
    Ok((rep, mats, weights))
}

fn cubic_element(sp: &SpinorSpace, la: &LieAlgebra, kind: Cubic) -> Result<OperatorMatrix> {
    let mut acc = OperatorMatrix::zeros(sp.dim());
    if kind == Cubic::None {
        return Ok(acc);
    }
    for (z, zd) in sp.p_basis() {
        let b = la.form_with_dual(z.gen);
        let ad = sp.ad_quadratic(la, z)?;
        let c = sp.clifford_op(la, zd)?;
        let (term, coef) = match kind {
            Cubic::Algebraic => (ad.mul(&c), 1.0 / 3.0),
            Cubic::Geometric => (c.mul(&ad), 0.5),
            Cubic::None => unreachable!(),
        };
        acc = acc.lin(&term, C64::new(coef / b, 0.0));
    }
    Ok(acc)
}

fn build(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: Option<&CentralizerData>,
    lam: &Weight,
    dual: bool,
    kind: Cubic,
    cfg: &DiracConfig,
) -> Result<DiracMatrix> {
    rs.require_dominant_integral(lam)?;
    let pol = polarization(cz)?;
    let sp = finite_spinor_module(rs, pol)?;
    let wdim = crate::repthy::weyl_dim(rs, lam)? as usize;
    let dim = wdim * sp.dim();
    if dim > cfg.cap {
        return Err(Error::CapExceeded { dim, cap: cfg.cap });
    }
    let (_, mats, wweights) = representation(rs, la, lam, dual)?;
    let mut op = OperatorMatrix::zeros(dim);
    for (z, zd) in sp.p_basis() {
        let b = la.form_with_dual(z.gen);
        let c = sp.clifford_op(la, zd)?;
        op = op.lin(&OperatorMatrix::kron_dense(&mats[z.gen], &c), C64::new(1.0 / b, 0.0));
    }
    let cubic = cubic_element(&sp, la, kind)?;
    op = op.add(&OperatorMatrix::identity_kron(wdim, &cubic));
    let mut weights = Vec::with_capacity(dim);
    let mut parity = Vec::with_capacity(dim);
    for w in &wweights {
        for s in &sp.elements {
            weights.push(w + &s.weight);
            parity.push(s.parity);
        }
    }
    let highest = if dual { rs.dominant_representative(&-lam).0 } else { lam.clone() };
    Ok(DiracMatrix {
        op,
        highest,
        weights,
        parity,
        rep_dim: wdim,
        spinor_dim: sp.dim(),
    })
}

/// Kostant's cubic Dirac operator on `W_lambda ⊗ S_g`.
pub fn cubic_dirac_matrix(rs: &RootSystem, la: &LieAlgebra, lam: &Weight, cfg: &DiracConfig) -> Result<DiracMatrix> {
    build(rs, la, None, lam, false, Cubic::Algebraic, cfg)
}

/// Relative cubic Dirac operator on `W_lambda ⊗ S_p`, `p = g ⊖ h`.
pub fn relative_cubic_dirac_matrix(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: &CentralizerData,
    lam: &Weight,
    cfg: &DiracConfig,
) -> Result<DiracMatrix> {
    build(rs, la, Some(cz), lam, false, Cubic::Algebraic, cfg)
}

/// Algebraic operator on the Peter-Weyl block `W_lambda* ⊗ S_p`.
pub fn algebraic_dirac_block(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: &CentralizerData,
    lam: &Weight,
    cfg: &DiracConfig,
) -> Result<DiracMatrix> {
    build(rs, la, Some(cz), lam, true, Cubic::Algebraic, cfg)
}

/// Geometric Dirac operator (spin connection `X + 1/2 ad^p(X)`) on `W_lambda* ⊗ S_p`.
pub fn geometric_dirac_block(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: &CentralizerData,
    lam: &Weight,
    cfg: &DiracConfig,
) -> Result<DiracMatrix> {
    build(rs, la, Some(cz), lam, true, Cubic::Geometric, cfg)
}

/// The Clifford element `-1/6 sum_p ad^p(X_a) c(X^a)` on `S_p`.
pub fn geo_alg_constant(rs: &RootSystem, la: &LieAlgebra, cz: &CentralizerData) -> Result<OperatorMatrix> {
    let sp = finite_spinor_module(rs, polarization(Some(cz))?)?;
    let mut acc = OperatorMatrix::zeros(sp.dim());
    for (z, zd) in sp.p_basis() {
        let b = la.form_with_dual(z.gen);
        let term = sp.ad_quadratic(la, z)?.mul(&sp.clifford_op(la, zd)?);
        acc = acc.lin(&term, C64::new(-1.0 / (6.0 * b), 0.0));
    }
    Ok(acc)
}

/// `h` acting on `W_lambda ⊗ S_p`: `pi(X) ⊗ 1 + 1 ⊗ ad(X)` for a basis of `h`.
pub fn h_action(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: &CentralizerData,
    lam: &Weight,
) -> Result<Vec<OperatorMatrix>> {
    let sp = finite_spinor_module(rs, polarization(Some(cz))?)?;
    let (_, mats, _) = representation(rs, la, lam, false)?;
    let np = rs.num_positive_roots();
    let mut gens: Vec<usize> = cz
        .roots
        .iter()
        .map(|r| r.root)
        .collect();
    gens.extend((0..rs.rank).map(|k| 2 * np + k));
    let mut out = Vec::new();
    for g in gens {
        let ad = sp.ad_quadratic(la, crate::spinor::LoopIdx::new(0, g))?;
        let op = OperatorMatrix::kron_identity(&mats[g], sp.dim())
            .add(&OperatorMatrix::identity_kron(mats[g].nrows(), &ad));
        out.push(op);
    }
    Ok(out)
}

fn hermitian_eigenvalues(m: DMatrix<C64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub weight: Weight,
    pub parity: u8,
    pub eigenvalues: Vec<f64>,
    #[serde(with = "crate::rational::vec")]
    pub predicted: Vec<Q>,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareReport {
    pub lambda: Weight,
    pub dim: usize,
    pub max_deviation: f64,
    pub self_adjoint_deviation: f64,
    pub blocks: Vec<BlockReport>,
}

/// Predicted `D^2` eigenvalues per `(weight, parity)` block, from branching
/// `W_lambda ⊗ S_p^{±}` to `h` and the square formula.
fn predicted_blocks(
    rs: &RootSystem,
    cz: Option<&CentralizerData>,
    lam: &Weight,
) -> Result<BTreeMap<(Weight, u8), Vec<Q>>> {
    let pol = polarization(cz)?;
    let sp = finite_spinor_module(rs, pol)?;
    let ch_w = irrep_weights(rs, lam)?;
    let top = rs.norm2(&(lam + &rs.rho));
    let mut out: BTreeMap<(Weight, u8), Vec<Q>> = BTreeMap::new();
    for par in 0..2u8 {
        let ch_s: WeightMultiset = sp
            .elements
            .iter()
            .filter(|e| e.parity == par)
            .map(|e| (e.weight.clone(), 1))
            .collect();
        let ch = ch_w.tensor(&ch_s);
        match cz {
            None => {
                for (w, m) in ch.iter() {
                    out.entry((w.clone(), par)).or_default().extend(std::iter::repeat_n(top, *m as usize));
                }
            }
            Some(c) => {
                let h = SubgroupRoots::from_centralizer(rs, c);
                let types = branch_graded(rs, &h, &ch.to_graded(), None, false)?;
                for (nu, m) in types {
                    let d2 = top - rs.norm2(&(&nu.lam + &c.rho_sigma));
                    let weights = if h.positive.is_empty() {
                        BTreeMap::from([(nu.clone(), 1)])
                    } else {
                        h.irrep(rs, &nu)
                    };
                    for (w, k) in weights {
                        out.entry((w.lam, par))
                            .or_default()
                            .extend(std::iter::repeat_n(d2, (m * k) as usize));
                    }
                }
            }
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    Ok(out)
}

fn compare(ev: &[f64], pred: &[Q]) -> f64 {
    if ev.len() != pred.len() {
        return f64::INFINITY;
    }
    ev.iter()
        .zip(pred)
        .map(|(a, b)| (a - to_f64(b)).abs())
        .fold(0.0, f64::max)
}

fn square_report(
    rs: &RootSystem,
    cz: Option<&CentralizerData>,
    lam: &Weight,
    d: &DiracMatrix,
) -> Result<SquareReport> {
    let pred = predicted_blocks(rs, cz, lam)?;
    let sq = d.op.mul(&d.op);
    let mut blocks = Vec::new();
    let mut worst: f64 = 0.0;
    let actual = d.blocks();
    for ((w, p), idx) in &actual {
        let ev = hermitian_eigenvalues(sq.block(idx));
        let pr = pred.get(&(w.clone(), *p)).cloned().unwrap_or_default();
        let dev = compare(&ev, &pr);
        worst = worst.max(dev);
        blocks.push(BlockReport {
            weight: w.clone(),
            parity: *p,
            eigenvalues: ev,
            predicted: pr,
            deviation: dev,
        });
    }
    // every predicted block must be present
    if pred.keys().any(|k| !actual.contains_key(k)) {
        worst = f64::INFINITY;
    }
    Ok(SquareReport {
        lambda: lam.clone(),
        dim: d.dim(),
        max_deviation: worst,
        self_adjoint_deviation: d.self_adjoint_deviation(),
        blocks,
    })
}

/// Compares every eigenvalue of `D^2` with `|lambda + rho_G|^2 - |nu + rho_H|^2`
/// on the h-isotypic decomposition; `cz = None` checks the full operator.
pub fn verify_kostant_square(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: Option<&CentralizerData>,
    lam: &Weight,
    cfg: &DiracConfig,
) -> Result<SquareReport> {
    let d = build(rs, la, cz, lam, false, Cubic::Algebraic, cfg)?;
    square_report(rs, cz, lam, &d)
}

#[derive(Debug, Clone, Serialize)]
pub struct FlaggedEigenvalue {
    pub weight: Weight,
    pub parity: u8,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub lambda: Weight,
    /// `weight -> [even, odd]` kernel dimensions.
    pub kernel_weights: BTreeMap<Weight, [i64; 2]>,
    /// Signed h-isotypic multiplicities of the kernel.
    pub signed: BTreeMap<Weight, i64>,
    pub flagged: Vec<FlaggedEigenvalue>,
}

/// Kernel of the relative cubic Dirac operator as a signed h-character.
pub fn dirac_kernel_finite(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: &CentralizerData,
    lam: &Weight,
    cfg: &DiracConfig,
) -> Result<KernelReport> {
    let d = relative_cubic_dirac_matrix(rs, la, cz, lam, cfg)?;
    let sq = d.op.mul(&d.op);
    let mut kernel_weights: BTreeMap<Weight, [i64; 2]> = BTreeMap::new();
    let mut flagged = Vec::new();
    for ((w, p), idx) in d.blocks() {
        for ev in hermitian_eigenvalues(sq.block(&idx)) {
            let a = ev.abs();
            if a < cfg.kernel_tol {
                kernel_weights.entry(w.clone()).or_insert([0, 0])[p as usize] += 1;
            } else if a < cfg.ambiguity_tol {
                flagged.push(FlaggedEigenvalue {
                    weight: w.clone(),
                    parity: p,
                    value: ev,
                });
            }
        }
    }
    let virt: WeightMultiset = kernel_weights
        .iter()
        .map(|(w, [e, o])| (w.clone(), e - o))
        .collect();
    let h = SubgroupRoots::from_centralizer(rs, cz);
    let signed = branch_graded(rs, &h, &virt.to_graded(), None, true)?
        .into_iter()
        .map(|(k, v)| (k.lam, v))
        .collect();
    Ok(KernelReport {
        lambda: lam.clone(),
        kernel_weights,
        signed,
        flagged,
    })
}

/// Combinatorial counterpart of the kernel: branching of
/// `ch W_lambda ⊗ (ch S_p^+ - ch S_p^-)` to `h`.
pub fn alternating_branching(rs: &RootSystem, cz: &CentralizerData, lam: &Weight) -> Result<BTreeMap<Weight, i64>> {
    let sp = finite_spinor_module(rs, polarization(Some(cz))?)?;
    let ch_s: WeightMultiset = sp
        .elements
        .iter()
        .map(|e| (e.weight.clone(), if e.parity == 0 { 1 } else { -1 }))
        .collect();
    let ch = irrep_weights(rs, lam)?.tensor(&ch_s);
    let h = SubgroupRoots::from_centralizer(rs, cz);
    Ok(branch_graded(rs, &h, &ch.to_graded(), None, true)?
        .into_iter()
        .map(|(k, v)| (k.lam, v))
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct GeoAlgReport {
    pub lambdas: Vec<Weight>,
    pub difference_norms: Vec<f64>,
    pub constant_norm: f64,
    pub max_spread: f64,
    pub self_adjoint_deviation: f64,
}

/// Operator norms of `D_alg - D_geo` on `W_lambda* ⊗ S_p` for several `lambda`,
/// against the norm of the constant Clifford element.
pub fn geo_alg_gap(
    rs: &RootSystem,
    la: &LieAlgebra,
    cz: &CentralizerData,
    lambdas: &[Weight],
    cfg: &DiracConfig,
) -> Result<GeoAlgReport> {
    let constant_norm = geo_alg_constant(rs, la, cz)?.operator_norm();
    let mut norms = Vec::new();
    let mut sa: f64 = 0.0;
    for lam in lambdas {
        let alg = algebraic_dirac_block(rs, la, cz, lam, cfg)?;
        let geo = geometric_dirac_block(rs, la, cz, lam, cfg)?;
        sa = sa.max(geo.self_adjoint_deviation());
        norms.push(alg.op.sub(&geo.op).operator_norm());
    }
    let spread = norms
        .iter()
        .chain(std::iter::once(&constant_norm))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    Ok(GeoAlgReport {
        lambdas: lambdas.to_vec(),
        difference_norms: norms,
        constant_norm,
        max_spread: spread.1 - spread.0,
        self_adjoint_deviation: sa,
    })
}

/// `|lambda + rho_G|^2 - |nu + rho_H|^2` for finite weights.
pub fn finite_square_value(rs: &RootSystem, cz: &CentralizerData, lam: &Weight, nu: &Weight) -> Q {
    rs.norm2(&(lam + &rs.rho)) - rs.norm2(&(nu + &cz.rho_sigma))
}

#[cfg(test)]
mod tests;
