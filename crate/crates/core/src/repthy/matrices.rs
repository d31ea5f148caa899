//! Explicit matrices of finite-dimensional irreducibles and the structure
//! constants of the Lie algebra in a Chevalley-type basis.
//!
//! Each weight space gets a real orthonormal basis built top-down: the
//! vectors `f_i u` spanning `V_mu` are encoded through their images under the
//! raising operators, their Gram matrix is diagonalized, and the top `m`
//! eigenvectors are kept where `m` is the Freudenthal multiplicity. With
//! `f_i = e_i^T` the resulting representation is unitary for the compact form.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::Zero;

use super::irrep_weights;
use crate::error::{Error, Result};
use crate::rational::{q, to_f64};
use crate::rootsys::{RootSystem, Weight};

/// A finite-dimensional irreducible with explicit operators.
#[derive(Debug, Clone)]
pub struct IrrepMatrices {
    pub highest: Weight,
    /// Weight of each basis vector.
    pub weights: Vec<Weight>,
    /// Simple raising operators.
    pub e: Vec<DMatrix<f64>>,
}

impl IrrepMatrices {
    pub fn new(rs: &RootSystem, lam: &Weight) -> Result<Self> {
        let ch = irrep_weights(rs, lam)?;
        let depth = |w: &Weight| rs.ip(&(lam - w), &rs.rho);
        let mut order: Vec<(Weight, usize)> =
            ch.iter().map(|(w, m)| (w.clone(), *m as usize)).collect();
        order.sort_by(|a, b| depth(&a.0).cmp(&depth(&b.0)).then_with(|| b.0.cmp(&a.0)));

        let r = rs.rank;
        let mut offset: HashMap<Weight, (usize, usize)> = HashMap::new();
        // e_j restricted to V_mu, as a dim(mu + alpha_j) x dim(mu) matrix
        let mut blocks: HashMap<Weight, Vec<Option<DMatrix<f64>>>> = HashMap::new();
        let mut dim = 0;
        for (mu, m) in &order {
            offset.insert(mu.clone(), (dim, *m));
            dim += m;
        }
        let up = |mu: &Weight, j: usize| mu + &rs.simple_roots[j];

        for (idx, (mu, m)) in order.iter().enumerate() {
            if idx == 0 {
                blocks.insert(mu.clone(), vec![None; r]);
                continue;
            }
            // candidates f_i u, stored by their e_j images
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for i in 0..r {
                if let Some(&(_, d)) = offset.get(&up(mu, i)) {
                    cands.extend((0..d).map(|u| (i, u)));
                }
            }
            let nc = cands.len();
            let mut imgs: Vec<Option<DMatrix<f64>>> = vec![None; r];
            for (j, img) in imgs.iter_mut().enumerate() {
                let target = up(mu, j);
                let Some(&(_, dt)) = offset.get(&target) else {
                    continue;
                };
                let mut mat = DMatrix::<f64>::zeros(dt, nc);
                for (c, &(i, u)) in cands.iter().enumerate() {
                    let src = up(mu, i);
                    // f_i (e_j u): e_j u lives in V_{mu + a_i + a_j}
                    let both = up(&src, j);
                    if let (Some(ej_src), Some(ei_tgt)) = (
                        blocks[&src][j].as_ref(),
                        blocks.get(&target).and_then(|b| b[i].as_ref()),
                    ) {
                        if offset.contains_key(&both) {
                            let v = ej_src.column(u).into_owned();
                            let w = ei_tgt.transpose() * v;
                            let mut col = mat.column_mut(c);
                            col += w;
                        }
                    }
                    if i == j {
                        let h = to_f64(&src.coords[i]);
                        mat[(u, c)] += h;
                    }
                }
                *img = Some(mat);
            }
            let mut gram = DMatrix::<f64>::zeros(nc, nc);
            for (a, &(i, u)) in cands.iter().enumerate() {
                let ei = imgs[i].as_ref().expect("raising target exists");
                for b in 0..nc {
                    gram[(a, b)] = ei[(u, b)];
                }
            }
            let gram = (&gram + gram.transpose()) * 0.5;
            let eig = SymmetricEigen::new(gram);
            let mut pairs: Vec<(f64, DVector<f64>)> = eig
                .eigenvalues
                .iter()
                .zip(eig.eigenvectors.column_iter())
                .map(|(l, v)| (*l, v.into_owned()))
                .collect();
            pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let top = pairs[0].0;
            if pairs[m - 1].0 <= 1e-9 * top || pairs.get(*m).is_some_and(|p| p.0 > 1e-7 * top) {
                return Err(Error::Numerical(format!(
                    "weight space {mu} has unexpected Gram rank"
                )));
            }
            let mut coef = DMatrix::<f64>::zeros(nc, *m);
            for (s, (val, vec)) in pairs.iter().take(*m).enumerate() {
                coef.set_column(s, &(vec / val.sqrt()));
            }
            let mine: Vec<Option<DMatrix<f64>>> =
                imgs.into_iter().map(|o| o.map(|mat| mat * &coef)).collect();
            blocks.insert(mu.clone(), mine);
        }

        let mut e = vec![DMatrix::<f64>::zeros(dim, dim); r];
        let mut weights = vec![Weight::zero(r); dim];
        for (mu, &(off, d)) in &offset {
            for s in 0..d {
                weights[off + s] = mu.clone();
            }
            for (j, blk) in blocks[mu].iter().enumerate() {
                if let Some(blk) = blk {
                    let (toff, _) = offset[&up(mu, j)];
                    e[j].view_mut((toff, off), (blk.nrows(), blk.ncols())).copy_from(blk);
                }
            }
        }
        Ok(IrrepMatrices {
            highest: lam.clone(),
            weights,
            e,
        })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn f(&self, i: usize) -> DMatrix<f64> {
        self.e[i].transpose()
    }

    /// Matrices of every element of the basis of [`LieAlgebra`].
    pub fn basis_matrices(&self, rs: &RootSystem, la: &LieAlgebra) -> Vec<DMatrix<f64>> {
        let np = rs.num_positive_roots();
        let mut pos: Vec<DMatrix<f64>> = Vec::with_capacity(np);
        for (idx, &(i, prev)) in la.recursion.iter().enumerate() {
            let m = match prev {
                None => self.e[i].clone(),
                Some(p) => &self.e[i] * &pos[p] - &pos[p] * &self.e[i],
            };
            debug_assert_eq!(idx, pos.len());
            pos.push(m);
        }
        let mut out = pos.clone();
        out.extend(pos.iter().map(|m| m.transpose()));
        for k in 0..rs.rank {
            let diag = DVector::from_iterator(
                self.dim(),
                self.weights.iter().map(|w| la.cartan_value(k, w)),
            );
            out.push(DMatrix::from_diagonal(&diag));
        }
        out
    }
}

/// The complexified Lie algebra in the basis
/// `E_a` (`a < 2P`, one root vector per element of `RootSystem::roots()`)
/// followed by an orthonormal basis `t_k` of the Cartan subalgebra.
///
/// Positive root vectors are defined by `E_alpha = [e_i, E_{alpha - alpha_i}]`
/// with a fixed choice of `i`, negative ones by transposition, so the same
/// abstract element is realized in every representation.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub num_positive: usize,
    pub rank: usize,
    /// For each positive root: `(i, Some(index of alpha - alpha_i))`, or `(i, None)` if simple.
    pub recursion: Vec<(usize, Option<usize>)>,
    /// `t_k = sum_i cartan_basis[k][i] h_i` with `h_i` the simple coroots.
    pub cartan_basis: Vec<Vec<f64>>,
    /// `b_alpha = B(E_alpha, E_{-alpha})` for each positive root.
    pub root_form: Vec<f64>,
    /// `[X_a, X_b]` as sparse coefficient lists.
    pub brackets: Vec<Vec<Vec<(usize, f64)>>>,
    /// Finite part of the weight of each basis element (zero for Cartan).
    pub gen_weights: Vec<Weight>,
}

impl LieAlgebra {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let np = rs.num_positive_roots();
        let r = rs.rank;
        let mut recursion = Vec::with_capacity(np);
        for (idx, c) in rs.positive_roots_simple.iter().enumerate() {
            if idx < r {
                recursion.push((idx, None));
                continue;
            }
            let (i, prev) = (0..r)
                .find_map(|i| {
                    let mut d = c.clone();
                    d[i] -= 1;
                    rs.positive_root_index_simple(&d).map(|p| (i, p))
                })
                .expect("every non-simple positive root has a predecessor");
            recursion.push((i, Some(prev)));
        }

        let coroots = rs.simple_coroots();
        let gram = DMatrix::from_fn(r, r, |i, j| to_f64(&rs.ip(&coroots[i], &coroots[j])));
        let chol = gram
            .cholesky()
            .ok_or_else(|| Error::Numerical("coroot Gram matrix not positive".into()))?;
        let linv = chol
            .l()
            .try_inverse()
            .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
        let cartan_basis: Vec<Vec<f64>> =
            (0..r).map(|k| (0..r).map(|i| linv[(k, i)]).collect()).collect();

        let mut gen_weights = rs.roots();
        gen_weights.extend((0..r).map(|_| Weight::zero(r)));

        let mut la = LieAlgebra {
            num_positive: np,
            rank: r,
            recursion,
            cartan_basis,
            root_form: Vec::new(),
            brackets: Vec::new(),
            gen_weights,
        };

        let adj = IrrepMatrices::new(rs, &rs.highest_root)?;
        let mats = adj.basis_matrices(rs, &la);
        let n = mats.len();
        let root_of: HashMap<Weight, usize> = la.gen_weights[..2 * np]
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let cart = &mats[2 * np..];
        let cgram = DMatrix::from_fn(r, r, |k, l| cart[k].dot(&cart[l]));
        let cgram_inv = cgram
            .try_inverse()
            .ok_or_else(|| Error::Numerical("Cartan matrices are dependent".into()))?;

        let mut brackets = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let m = &mats[a] * &mats[b] - &mats[b] * &mats[a];
                let wt = &la.gen_weights[a] + &la.gen_weights[b];
                let mut coeffs = Vec::new();
                if wt.is_zero() {
                    let rhs = DVector::from_iterator(r, cart.iter().map(|t| t.dot(&m)));
                    let c = &cgram_inv * rhs;
                    for k in 0..r {
                        if c[k].abs() > 1e-12 {
                            coeffs.push((2 * np + k, c[k]));
                        }
                    }
                } else if let Some(&g) = root_of.get(&wt) {
                    let c = mats[g].dot(&m) / mats[g].norm_squared();
                    if c.abs() > 1e-12 {
                        coeffs.push((g, c));
                    }
                }
                let mut rebuilt = DMatrix::<f64>::zeros(m.nrows(), m.ncols());
                for &(g, c) in &coeffs {
                    rebuilt += &mats[g] * c;
                }
                if (&rebuilt - &m).amax() > 1e-9 * (1.0 + m.amax()) {
                    return Err(Error::Numerical(format!("bracket [{a}, {b}] is not in the span")));
                }
                brackets[a][b] = coeffs;
            }
        }

        // B(E_a, E_-a) = 2c / |alpha|^2 where [E_a, E_-a] = c h_alpha
        let mut root_form = Vec::with_capacity(np);
        for (idx, alpha) in rs.positive_roots.iter().enumerate() {
            let m = &mats[idx] * &mats[idx + np] - &mats[idx + np] * &mats[idx];
            let (pos, w) = adj
                .weights
                .iter()
                .enumerate()
                .find(|(_, w)| !rs.ip(w, alpha).is_zero())
                .expect("adjoint has a weight not orthogonal to alpha");
            let pairing = to_f64(&(q(2) * rs.ip(w, alpha) / rs.norm2(alpha)));
            let c = m[(pos, pos)] / pairing;
            root_form.push(2.0 * c / to_f64(&rs.norm2(alpha)));
        }
        la.root_form = root_form;
        la.brackets = brackets;
        Ok(la)
    }

    pub fn dim(&self) -> usize {
        2 * self.num_positive + self.rank
    }

    /// Index of the Cartan element `t_k`.
    pub fn cartan_index(&self, k: usize) -> usize {
        2 * self.num_positive + k
    }

    /// Value of `t_k` on the weight `w`.
    pub fn cartan_value(&self, k: usize, w: &Weight) -> f64 {
        self.cartan_basis[k]
            .iter()
            .zip(&w.coords)
            .map(|(c, x)| c * to_f64(x))
            .sum()
    }

    /// Index of the basis element paired with `a` by the invariant form.
    pub fn dual_index(&self, a: usize) -> usize {
        let np = self.num_positive;
        if a < np {
            a + np
        } else if a < 2 * np {
            a - np
        } else {
            a
        }
    }

    /// `B(X_a, X_{dual(a)})`.
    pub fn form_with_dual(&self, a: usize) -> f64 {
        if a < 2 * self.num_positive {
            self.root_form[a % self.num_positive]
        } else {
            1.0
        }
    }

    /// `B(X_a, X_b)`.
    pub fn form(&self, a: usize, b: usize) -> f64 {
        if self.dual_index(a) == b {
            self.form_with_dual(a)
        } else {
            0.0
        }
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, f64)] {
        &self.brackets[a][b]
    }
}
