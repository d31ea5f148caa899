//! Spinor modules: the finite module `S_p` for `p = g ⊖ h` and its truncated
//! loop analogue, realized as fermionic Fock spaces.
//!
//! A loop element `X z^{-e}` has energy `e`. Creation operators are the
//! negative root directions at energy 0 and every direction at positive
//! energy, minus the directions lying in `h`. The vacuum has energy 0 and
//! weight `rho_G - rho_H`. The Clifford relation is
//! `{c(u), c(v)} = 2 B(u, v)` with the loop form
//! `B(X z^a, Y z^b) = delta_{a+b,0} B(X, Y)`.

pub mod operator;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

pub use operator::{OperatorMatrix, C64};

use crate::error::{Error, Result};
use crate::repthy::matrices::LieAlgebra;
use crate::rootsys::{CentralizerData, RootSystem, Weight};

/// The loop element `X_gen z^{-energy}`; `gen` indexes the basis of [`LieAlgebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoopIdx {
    pub energy: i64,
    pub gen: usize,
}

impl LoopIdx {
    pub fn new(energy: i64, gen: usize) -> Self {
        LoopIdx { energy, gen }
    }
}

/// Which subalgebra is removed from the spinor.
#[derive(Debug, Clone, Copy)]
pub enum Polarization<'a> {
    /// `h = 0`: the full spinor module, Cartan zero modes included.
    Full,
    /// `h` is the given centralizer.
    Relative(&'a CentralizerData),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mode {
    pub energy: i64,
    /// Basis element created by this mode; `None` for a Cartan zero mode.
    pub gen: Option<usize>,
    pub weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorBasisElement {
    /// Bit `i` set iff creation mode `i` is occupied.
    pub occupied: u128,
    pub weight: Weight,
    pub energy: i64,
    pub parity: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ladder {
    Create(usize),
    Annihilate(usize),
}

struct Ctx<'a> {
    rs: &'a RootSystem,
    pol: Polarization<'a>,
}

impl Ctx<'_> {
    fn np(&self) -> usize {
        self.rs.num_positive_roots()
    }

    /// Whether `X_gen z^{-energy}` lies in `h`.
    fn in_h(&self, energy: i64, gen: usize) -> bool {
        let np = self.np();
        match self.pol {
            Polarization::Full => false,
            Polarization::Relative(cz) => {
                if gen < 2 * np {
                    cz.contains(-energy, gen)
                } else {
                    energy == 0
                }
            }
        }
    }

    fn vacuum(&self) -> Weight {
        match self.pol {
            Polarization::Full => self.rs.rho.clone(),
            Polarization::Relative(cz) => &self.rs.rho - &cz.rho_sigma,
        }
    }

    fn gen_weight(&self, gen: usize) -> Weight {
        let np = self.np();
        if gen < 2 * np {
            let r = &self.rs.positive_roots[gen % np];
            if gen < np {
                r.clone()
            } else {
                -r
            }
        } else {
            Weight::zero(self.rs.rank)
        }
    }

    fn modes(&self, n_max: u32) -> Vec<Mode> {
        let np = self.np();
        let r = self.rs.rank;
        let mut modes = Vec::new();
        for gen in np..2 * np {
            if !self.in_h(0, gen) {
                modes.push(Mode {
                    energy: 0,
                    gen: Some(gen),
                    weight: self.gen_weight(gen),
                });
            }
        }
        if matches!(self.pol, Polarization::Full) {
            for _ in 0..r.div_ceil(2) {
                modes.push(Mode {
                    energy: 0,
                    gen: None,
                    weight: Weight::zero(r),
                });
            }
        }
        for e in 1..=n_max as i64 {
            for gen in 0..2 * np + r {
                if !self.in_h(e, gen) {
                    modes.push(Mode {
                        energy: e,
                        gen: Some(gen),
                        weight: self.gen_weight(gen),
                    });
                }
            }
        }
        modes
    }
}

/// Graded character of the truncated spinor: `(energy, weight) -> [even, odd]`.
pub type SpinorCharacter = BTreeMap<(i64, Weight), [i64; 2]>;

/// Character by the generating product over creation modes; no basis is built.
pub fn spinor_character(rs: &RootSystem, pol: Polarization<'_>, n_max: u32) -> SpinorCharacter {
    let ctx = Ctx { rs, pol };
    let mut ch: SpinorCharacter = BTreeMap::from([((0, ctx.vacuum()), [1, 0])]);
    for m in ctx.modes(n_max) {
        let mut next = ch.clone();
        for ((e, w), [ev, od]) in &ch {
            let e2 = e + m.energy;
            if e2 > n_max as i64 {
                continue;
            }
            let slot = next.entry((e2, w + &m.weight)).or_insert([0, 0]);
            slot[0] += od;
            slot[1] += ev;
        }
        ch = next;
    }
    ch
}

/// Enumerated Fock basis of the spinor module truncated at energy `N`.
#[derive(Debug, Clone)]
pub struct SpinorSpace {
    pub modes: Vec<Mode>,
    pub elements: Vec<SpinorBasisElement>,
    pub vacuum: Weight,
    pub truncation: u32,
    pub full: bool,
    index: HashMap<u128, usize>,
    /// `(energy, gen) -> creation mode`
    creation: HashMap<(i64, usize), usize>,
    /// Creation-mode indices of the Cartan zero modes.
    pseudo: Vec<usize>,
    in_h: HashMap<(i64, usize), bool>,
    rank: usize,
    num_positive: usize,
}

/// Finite spinor module `S_p` (energy-0 layer).
pub fn finite_spinor_module(rs: &RootSystem, pol: Polarization<'_>) -> Result<SpinorSpace> {
    SpinorSpace::new(rs, pol, 0)
}

/// Truncated loop spinor module with all states of energy at most `n_max`.
pub fn truncated_loop_spinor(rs: &RootSystem, pol: Polarization<'_>, n_max: u32) -> Result<SpinorSpace> {
    SpinorSpace::new(rs, pol, n_max)
}

impl SpinorSpace {
    pub fn new(rs: &RootSystem, pol: Polarization<'_>, n_max: u32) -> Result<Self> {
        let ctx = Ctx { rs, pol };
        let modes = ctx.modes(n_max);
        if modes.len() > 128 {
            return Err(Error::CapExceeded {
                dim: modes.len(),
                cap: 128,
            });
        }
        let vacuum = ctx.vacuum();
        let mut elements = Vec::new();
        // depth-first over modes, pruning by energy
        let mut stack: Vec<(usize, u128, i64)> = vec![(0, 0, 0)];
        while let Some((i, occ, e)) = stack.pop() {
            if i == modes.len() {
                let mut w = vacuum.clone();
                for (j, m) in modes.iter().enumerate() {
                    if occ >> j & 1 == 1 {
                        w += &m.weight;
                    }
                }
                elements.push(SpinorBasisElement {
                    occupied: occ,
                    weight: w,
                    energy: e,
                    parity: (occ.count_ones() % 2) as u8,
                });
                continue;
            }
            stack.push((i + 1, occ, e));
            let e2 = e + modes[i].energy;
            if e2 <= n_max as i64 {
                stack.push((i + 1, occ | (1u128 << i), e2));
            }
        }
        elements.sort_by(|a, b| {
            (a.energy, &a.weight, a.occupied).cmp(&(b.energy, &b.weight, b.occupied))
        });
        let index = elements.iter().enumerate().map(|(i, s)| (s.occupied, i)).collect();
        let creation = modes
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.gen.map(|g| ((m.energy, g), i)))
            .collect();
        let pseudo = modes
            .iter()
            .enumerate()
            .filter(|(_, m)| m.gen.is_none())
            .map(|(i, _)| i)
            .collect();
        let np = rs.num_positive_roots();
        let r = rs.rank;
        let n = n_max as i64;
        let mut in_h = HashMap::new();
        for e in -2 * n - 2..=2 * n + 2 {
            for gen in 0..2 * np + r {
                in_h.insert((e, gen), ctx.in_h(e, gen));
            }
        }
        Ok(SpinorSpace {
            modes,
            elements,
            vacuum,
            truncation: n_max,
            full: matches!(pol, Polarization::Full),
            index,
            creation,
            pseudo,
            in_h,
            rank: r,
            num_positive: np,
        })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn vacuum_index(&self) -> usize {
        self.index[&0]
    }

    pub fn index_of(&self, occupied: u128) -> Option<usize> {
        self.index.get(&occupied).copied()
    }

    /// Whether the loop element lies in `h` (and so has no Clifford action here).
    pub fn in_h(&self, u: LoopIdx) -> bool {
        self.in_h.get(&(u.energy, u.gen)).copied().unwrap_or(false)
    }

    fn dual_gen(&self, gen: usize) -> usize {
        let np = self.num_positive;
        if gen < np {
            gen + np
        } else if gen < 2 * np {
            gen - np
        } else {
            gen
        }
    }

    /// Ladder expansion of `c(u)`; `None` if `u` sits beyond the truncation
    /// (where it acts by zero on the truncated space) or in `h`.
    fn ladders(&self, la: &LieAlgebra, u: LoopIdx) -> Option<Vec<(C64, Ladder)>> {
        if self.in_h(u) {
            return None;
        }
        let b = la.form_with_dual(u.gen);
        let s = C64::new((2.0 * b).sqrt(), 0.0);
        if let Some(&i) = self.creation.get(&(u.energy, u.gen)) {
            return Some(vec![(s, Ladder::Create(i))]);
        }
        if let Some(&i) = self.creation.get(&(-u.energy, self.dual_gen(u.gen))) {
            return Some(vec![(s, Ladder::Annihilate(i))]);
        }
        if u.energy == 0 && u.gen >= 2 * self.num_positive && self.full {
            let k = u.gen - 2 * self.num_positive;
            let i = self.pseudo[k / 2];
            let one = C64::new(1.0, 0.0);
            let im = C64::new(0.0, 1.0);
            return Some(if k.is_multiple_of(2) {
                vec![(one, Ladder::Annihilate(i)), (one, Ladder::Create(i))]
            } else {
                vec![(im, Ladder::Annihilate(i)), (-im, Ladder::Create(i))]
            });
        }
        None
    }

    fn check(&self, u: LoopIdx) -> Result<()> {
        if u.energy.unsigned_abs() > self.truncation as u64 {
            return Err(Error::OutsideTruncation {
                energy: u.energy,
                truncation: self.truncation,
            });
        }
        if self.in_h(u) {
            return Err(Error::ConventionBreach(format!(
                "loop element {u:?} lies in h and acts outside S_p"
            )));
        }
        Ok(())
    }

    fn apply(&self, word: &[Ladder], occ: u128) -> Option<(f64, u128)> {
        let mut state = occ;
        let mut sign = 1.0;
        for l in word.iter().rev() {
            let (i, create) = match *l {
                Ladder::Create(i) => (i, true),
                Ladder::Annihilate(i) => (i, false),
            };
            let bit = 1u128 << i;
            if (state & bit != 0) == create {
                return None;
            }
            if (state & (bit - 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            state ^= bit;
        }
        self.index.contains_key(&state).then_some((sign, state))
    }

    fn assemble(&self, terms: &[(C64, Vec<Ladder>)]) -> OperatorMatrix {
        let mut trip = Vec::new();
        for (col, el) in self.elements.iter().enumerate() {
            for (coef, word) in terms {
                if let Some((s, out)) = self.apply(word, el.occupied) {
                    trip.push((self.index[&out], col, coef * s));
                }
            }
        }
        OperatorMatrix::from_triplets(self.dim(), trip)
    }

    /// Clifford action `c(u)` of a loop element of `p`.
    pub fn clifford_op(&self, la: &LieAlgebra, u: LoopIdx) -> Result<OperatorMatrix> {
        self.check(u)?;
        let terms: Vec<(C64, Vec<Ladder>)> = self
            .ladders(la, u)
            .unwrap_or_default()
            .into_iter()
            .map(|(c, l)| (c, vec![l]))
            .collect();
        Ok(self.assemble(&terms))
    }

    /// `c` of a linear combination, silently projecting away `h` and modes
    /// beyond the truncation.
    pub fn clifford_of(&self, la: &LieAlgebra, elem: &[(LoopIdx, f64)]) -> OperatorMatrix {
        let mut terms = Vec::new();
        for &(u, x) in elem {
            for (c, l) in self.ladders(la, u).unwrap_or_default() {
                terms.push((c * x, vec![l]));
            }
        }
        self.assemble(&terms)
    }

    /// Loop bracket `[X z^{-a}, Y z^{-b}] = [X, Y] z^{-(a+b)}` (no central term).
    pub fn loop_bracket(la: &LieAlgebra, x: LoopIdx, y: LoopIdx) -> Vec<(LoopIdx, f64)> {
        la.bracket(x.gen, y.gen)
            .iter()
            .map(|&(g, c)| (LoopIdx::new(x.energy + y.energy, g), c))
            .collect()
    }

    /// Orthogonal projection of a combination onto `p`.
    pub fn project_p(&self, elem: &[(LoopIdx, f64)]) -> Vec<(LoopIdx, f64)> {
        elem.iter().filter(|(u, _)| !self.in_h(*u)).cloned().collect()
    }

    /// Pairs `(Z, Z*)` over a basis of `p` within the truncation, where `Z*`
    /// is the basis element with `B(Z, Z*) != 0`.
    pub(crate) fn p_basis(&self) -> Vec<(LoopIdx, LoopIdx)> {
        let mut out = Vec::new();
        for m in &self.modes {
            if let Some(g) = m.gen {
                let z = LoopIdx::new(m.energy, g);
                let zb = LoopIdx::new(-m.energy, self.dual_gen(g));
                out.push((z, zb));
                out.push((zb, z));
            }
        }
        if self.full {
            for k in 0..self.rank {
                let t = LoopIdx::new(0, 2 * self.num_positive + k);
                out.push((t, t));
            }
        }
        out
    }

    /// Spin lift `ad(X) = 1/4 sum_a c(pr_p [X, Z_a]) c(Z^a)` of a loop element,
    /// normal ordered. For an energy-0 Cartan `X` the constant is fixed so the
    /// vacuum carries its weight; for any other `X` no constant can occur.
    pub fn ad_quadratic(&self, la: &LieAlgebra, x: LoopIdx) -> Result<OperatorMatrix> {
        if x.energy.unsigned_abs() > self.truncation as u64 {
            return Err(Error::OutsideTruncation {
                energy: x.energy,
                truncation: self.truncation,
            });
        }
        let mut terms: Vec<(C64, Vec<Ladder>)> = Vec::new();
        for (z, zd) in self.p_basis() {
            let b = la.form_with_dual(z.gen);
            let Some(right) = self.ladders(la, zd) else { continue };
            for (t, coef) in Self::loop_bracket(la, x, z) {
                let Some(left) = self.ladders(la, t) else { continue };
                for (cl, l1) in &left {
                    for (cr, l2) in &right {
                        let c = cl * cr * (coef / (4.0 * b));
                        // annihilators to the right; this drops the contraction
                        // for a genuine mode and is exact otherwise
                        match (*l1, *l2) {
                            (Ladder::Annihilate(i), Ladder::Create(j)) if i != j => {
                                terms.push((-c, vec![Ladder::Create(j), Ladder::Annihilate(i)]));
                            }
                            (Ladder::Annihilate(i), Ladder::Create(_)) if !self.pseudo.contains(&i) => {
                                terms.push((-c, vec![Ladder::Create(i), Ladder::Annihilate(i)]));
                            }
                            _ => terms.push((c, vec![*l1, *l2])),
                        }
                    }
                }
            }
        }
        let mut op = self.assemble(&terms);
        let np = self.num_positive;
        if x.energy == 0 && x.gen >= 2 * np {
            let k = x.gen - 2 * np;
            let v = self.vacuum_index();
            let target = la.cartan_value(k, &self.vacuum);
            let shift = C64::new(target, 0.0) - op.get(v, v);
            op = op.add(&OperatorMatrix::identity(self.dim()).scale(shift));
        }
        Ok(op)
    }

    /// States whose energy leaves room for operands of total energy `budget`.
    pub fn guard_band(&self, budget: i64) -> impl Fn(usize) -> bool + '_ {
        let cap = self.truncation as i64 - budget - 1;
        move |i| self.elements[i].energy <= cap
    }

    /// Character read off the enumerated basis.
    pub fn character(&self) -> SpinorCharacter {
        let mut ch = SpinorCharacter::new();
        for el in &self.elements {
            ch.entry((el.energy, el.weight.clone())).or_insert([0, 0])[el.parity as usize] += 1;
        }
        ch
    }
}
