use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use crate::bimod::{BimoduleKind, Label};
use crate::exactla::{solve_sparse, CoeffRing, Field, Fp, Rationals, SparseMat};
use crate::qma::Word;
use crate::specseq::{e1_page, E1Page};

use super::basis::{a_basis, d_basis, Reducer};
use super::bracket::closed_bracket;
use super::cochain::{cochain_bracket, cocycle_a, cocycle_d, unit_cochain, SparseCochain};
use super::{CohClass, GhError, Symbol};

type Block = (i32, i32);

/// Everything needed to name cohomology classes of N_m (m ≥ 3) up to a
/// fixed Hochschild degree over one ring: the E1 page of N with its d1,
/// and the expansions of non-basis a-symbols.
#[derive(Clone, Debug)]
pub struct GhContext {
    pub m: usize,
    pub ring: CoeffRing,
    pub max_degree: usize,
    page: E1Page,
    index: HashMap<(Word, Label), usize>,
    reducer: Reducer,
}

fn verify<F: Field>(f: &F, a: &SparseMat, x: &[F::E], rhs: &[(usize, i64)]) -> bool {
    let mut acc = vec![f.zero(); a.rows];
    for &(r, c, v) in &a.entries {
        acc[r] = f.add(&acc[r], &f.mul(&f.from_i64(v), &x[c]));
    }
    for &(r, v) in rhs {
        acc[r] = f.sub(&acc[r], &f.from_i64(v));
    }
    acc.iter().all(|e| f.is_zero(e))
}

impl GhContext {
    pub fn new(m: usize, ring: CoeffRing, max_degree: usize) -> Result<Self, GhError> {
        if m < 3 {
            return Err(GhError::UnsupportedPair(format!("a/d classes need m ≥ 3, got {m}")));
        }
        let page = e1_page(m, BimoduleKind::N, max_degree)?;
        let mut index = HashMap::new();
        for basis in page.bases.values() {
            for (k, (w, l)) in basis.iter().enumerate() {
                index.insert((w.clone(), *l), k);
            }
        }
        let reducer = Reducer::new(m, max_degree);
        Ok(GhContext { m, ring, max_degree, page, index, reducer })
    }

    fn check_degree(&self, n: usize) -> Result<(), GhError> {
        if n > self.max_degree {
            return Err(GhError::DegreeOutOfRange { needed: n, built: self.max_degree });
        }
        Ok(())
    }

    /// Canonical coordinates, reduced into the ring.
    pub fn reduce(&self, raw: &CohClass) -> Result<CohClass, GhError> {
        Ok(self.reducer.reduce(raw)?.reduced(self.ring))
    }

    pub fn symbol_cochain(&self, s: &Symbol) -> Result<SparseCochain, GhError> {
        match s {
            Symbol::One => Ok(unit_cochain(self.m)),
            Symbol::A(i, w) => cocycle_a(self.m, *i, w),
            Symbol::D(w) => cocycle_d(self.m, w),
            _ => Err(GhError::UnsupportedPair(format!("{s} for m = {}", self.m))),
        }
    }

    /// A cocycle representing a homogeneous class.
    pub fn representative(&self, cls: &CohClass) -> Result<SparseCochain, GhError> {
        let deg = match cls.degree() {
            Some(d) => d,
            None if cls.is_zero() => 0,
            None => return Err(GhError::UnsupportedPair(format!("{cls} is not homogeneous"))),
        };
        let mut out = SparseCochain::zero(self.m, deg);
        for (s, &c) in &cls.terms {
            out = out.add(&self.symbol_cochain(s)?.scale(c));
        }
        Ok(out)
    }

    /// Koszul restriction split into E1 blocks (label degree, s).
    fn blocks(&self, z: &SparseCochain) -> BTreeMap<Block, Vec<(usize, i64)>> {
        let mut out: BTreeMap<Block, Vec<(usize, i64)>> = BTreeMap::new();
        for ((w, l), c) in z.koszul_restriction() {
            let c = self.ring.reduce(c);
            if c == 0 {
                continue;
            }
            let p = l.degree();
            let q = w.len() as i32 - p;
            let k = self.index[&(w, l)];
            out.entry((p, q)).or_default().push((k, c));
        }
        out
    }

    fn basis_symbols(&self, (p, q): Block) -> Vec<Symbol> {
        let m = self.m as i32;
        if q < 0 && p != m - 1 {
            return Vec::new();
        }
        match p {
            0 if q == 0 => vec![Symbol::One],
            1 => a_basis(self.m, q as usize),
            _ if p == m - 1 => d_basis(self.m, (p + q) as usize).into_iter().map(Symbol::D).collect(),
            _ => Vec::new(),
        }
    }

    /// Columns: the basis vectors of the block, then d1 into the block.
    fn block_matrix(&self, block: Block, symbols: &[Symbol]) -> Result<SparseMat, GhError> {
        let (p, q) = block;
        let rows = self.page.rank(p, q);
        let incoming = self.page.d1.get(&(p - 1, q));
        let src = incoming.map_or(0, |d| d.cols);
        let mut a = SparseMat::new(rows, symbols.len() + src);
        for (j, s) in symbols.iter().enumerate() {
            let b = self.blocks(&self.symbol_cochain(s)?);
            for (blk, v) in b {
                debug_assert_eq!(blk, block);
                for (r, c) in v {
                    a.push(r, j, c);
                }
            }
        }
        if let Some(d) = incoming {
            for &(r, c, v) in &d.entries {
                a.push(r, symbols.len() + c, v);
            }
        }
        Ok(a)
    }

    /// Solves `a x = rhs` over the ring; returns the first `keep` coordinates.
    fn solve(&self, a: &SparseMat, rhs: &[(usize, i64)], keep: usize) -> Result<Option<Vec<i64>>, GhError> {
        match self.ring {
            CoeffRing::PrimeField(p) => {
                let f = Fp(p);
                let Some(x) = solve_sparse(&f, a, &[rhs.to_vec()]).pop().flatten() else { return Ok(None) };
                debug_assert!(verify(&f, a, &x, rhs));
                Ok(Some(x[..keep].iter().map(|&v| v as i64).collect()))
            }
            _ => {
                let Some(x) = solve_sparse(&Rationals, a, &[rhs.to_vec()]).pop().flatten() else { return Ok(None) };
                debug_assert!(verify(&Rationals, a, &x, rhs));
                let mut out = Vec::with_capacity(keep);
                for v in &x[..keep] {
                    if !v.is_integer() {
                        return Err(GhError::OutsideBasis(format!("non-integral coordinate {v}")));
                    }
                    out.push(self.ring.reduce(v.to_integer().to_i64().expect("small coordinate")));
                }
                Ok(Some(out))
            }
        }
    }

    /// The class of a cocycle in canonical coordinates.
    pub fn identify(&self, z: &SparseCochain) -> Result<CohClass, GhError> {
        self.check_degree(z.degree)?;
        if !z.is_cocycle(self.ring) {
            return Err(GhError::NotACocycle);
        }
        let mut out = CohClass::zero(self.m);
        for (block, v) in self.blocks(z) {
            let symbols = self.basis_symbols(block);
            let a = self.block_matrix(block, &symbols)?;
            let coords = self
                .solve(&a, &v, symbols.len())?
                .ok_or_else(|| GhError::OutsideBasis(format!("block {block:?} of a degree-{} cocycle", z.degree)))?;
            for (s, c) in symbols.into_iter().zip(coords) {
                out.add_term(s, c);
            }
        }
        Ok(out.reduced(self.ring))
    }

    /// Whether a cocycle is a coboundary. Over fields this exhibits a
    /// primitive in the Koszul model and checks it; over ℤ and ℤ/N it reads
    /// the canonical coordinates, which is equivalent since HH is free.
    pub fn is_coboundary(&self, z: &SparseCochain) -> Result<bool, GhError> {
        if !self.ring.is_field() {
            return Ok(self.identify(z)?.is_zero());
        }
        self.check_degree(z.degree)?;
        if !z.is_cocycle(self.ring) {
            return Err(GhError::NotACocycle);
        }
        for (block, v) in self.blocks(z) {
            let a = self.block_matrix(block, &[])?;
            let found = match self.ring {
                CoeffRing::PrimeField(p) => solve_sparse(&Fp(p), &a, &[v.clone()])
                    .pop()
                    .flatten()
                    .is_some_and(|x| verify(&Fp(p), &a, &x, &v)),
                _ => solve_sparse(&Rationals, &a, &[v.clone()])
                    .pop()
                    .flatten()
                    .is_some_and(|x| verify(&Rationals, &a, &x, &v)),
            };
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn cup(&self, x: &CohClass, y: &CohClass) -> Result<CohClass, GhError> {
        let mut out = CohClass::zero(self.m);
        for xp in x.homogeneous_parts().values() {
            for yp in y.homogeneous_parts().values() {
                let z = self.representative(xp)?.cup(&self.representative(yp)?);
                out = out.add(&self.identify(&z)?);
            }
        }
        Ok(out.reduced(self.ring))
    }

    /// The cocycle-level cup of representatives (for certificates).
    pub fn cup_cochain(&self, x: &CohClass, y: &CohClass) -> Result<SparseCochain, GhError> {
        Ok(self.representative(x)?.cup(&self.representative(y)?))
    }

    /// Bracket by circle products of representatives, then identification.
    pub fn bracket_cochain(&self, x: &CohClass, y: &CohClass) -> Result<CohClass, GhError> {
        let mut out = CohClass::zero(self.m);
        for xp in x.homogeneous_parts().values() {
            for yp in y.homogeneous_parts().values() {
                let z = cochain_bracket(&self.representative(xp)?, &self.representative(yp)?);
                out = out.add(&self.identify(&z)?);
            }
        }
        Ok(out.reduced(self.ring))
    }

    /// Bracket by the splice formulas, then reduction to the basis.
    pub fn bracket_closed(&self, x: &CohClass, y: &CohClass) -> Result<CohClass, GhError> {
        let mut raw = CohClass::zero(self.m);
        for (s, &c) in &x.terms {
            for (t, &d) in &y.terms {
                raw = raw.add(&closed_bracket(self.m, s, t)?.scale(c * d));
            }
        }
        self.reduce(&raw)
    }
}
