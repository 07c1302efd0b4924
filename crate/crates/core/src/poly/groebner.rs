//! Buchberger's algorithm over `GF(p)`.
//!
//! Polynomials are converted to a dense exponent representation over the
//! variables that occur in the input. Pairs are pruned with the
//! Gebauer–Möller criteria and selected by sugar degree.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::cmp::Reverse;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{Domain, Polynomial};
use super::var::Var;
use crate::error::{Error, Result};

/// Dense engines support at most this many variables.
pub const MAX_VARS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    deg: u32,
    mask: u64,
    e: [u8; MAX_VARS],
}

impl Mono {
    fn from_exps(e: [u8; MAX_VARS]) -> Mono {
        let mut deg = 0;
        let mut mask = 0u64;
        for (i, &x) in e.iter().enumerate() {
            deg += x as u32;
            if x > 0 {
                mask |= 1 << i;
            }
        }
        Mono { deg, mask, e }
    }

    #[inline]
    fn divides(&self, other: &Mono) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.e.iter().zip(other.e.iter()).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i].checked_add(other.e[i]).expect("exponent overflow in Groebner engine");
        }
        Mono { deg: self.deg + other.deg, mask: self.mask | other.mask, e }
    }

    /// `self / other`; caller guarantees divisibility.
    fn div(&self, other: &Mono) -> Mono {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] - other.e[i];
        }
        Mono::from_exps(e)
    }

    fn lcm(&self, other: &Mono) -> Mono {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(other.e[i]);
        }
        Mono::from_exps(e)
    }

    fn coprime(&self, other: &Mono) -> bool {
        self.mask & other.mask == 0
    }

    #[inline]
    fn cmp_by(&self, other: &Mono, order: MonomialOrder, nvars: usize) -> Ordering {
        match order {
            MonomialOrder::DegRevLex => self.deg.cmp(&other.deg).then_with(|| {
                for i in (0..nvars).rev() {
                    if self.e[i] != other.e[i] {
                        return other.e[i].cmp(&self.e[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::DegLex => self.deg.cmp(&other.deg).then_with(|| self.e[..nvars].cmp(&other.e[..nvars])),
            MonomialOrder::Lex => self.e[..nvars].cmp(&other.e[..nvars]),
        }
    }

    /// Byte key whose lexicographic order is the monomial order.
    fn sort_key(&self, order: MonomialOrder, nvars: usize) -> Vec<u8> {
        let mut k = Vec::with_capacity(nvars + 4);
        match order {
            MonomialOrder::DegRevLex => {
                k.extend_from_slice(&self.deg.to_be_bytes());
                k.extend((0..nvars).rev().map(|i| 255 - self.e[i]));
            }
            MonomialOrder::DegLex => {
                k.extend_from_slice(&self.deg.to_be_bytes());
                k.extend_from_slice(&self.e[..nvars]);
            }
            MonomialOrder::Lex => k.extend_from_slice(&self.e[..nvars]),
        }
        k
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Term {
    m: Mono,
    c: u32,
}

/// Terms sorted strictly decreasing; coefficients in `1..p`.
#[derive(Clone, Default)]
pub(crate) struct FpPoly {
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug)]
struct Field {
    p: u32,
}

impl Field {
    #[inline]
    fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(self, a: u32) -> u32 {
        // Fermat: a^(p-2)
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }
}

/// Fixed dense variable layout for one engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarLayout {
    vars: Vec<Var>,
}

impl VarLayout {
    pub fn new(mut vars: Vec<Var>) -> Result<VarLayout> {
        vars.sort();
        vars.dedup();
        if vars.len() > MAX_VARS {
            return Err(Error::Unsupported(format!(
                "Groebner engine supports at most {MAX_VARS} variables, got {}",
                vars.len()
            )));
        }
        Ok(VarLayout { vars })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    fn index(&self, v: Var) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    /// Splits a monomial into its dense part and the part in foreign variables.
    fn split(&self, m: &Monomial) -> Result<(Mono, Monomial)> {
        let mut e = [0u8; MAX_VARS];
        let mut foreign = Vec::new();
        for (v, x) in m.iter() {
            match self.index(v) {
                Some(i) => {
                    e[i] = u8::try_from(x).map_err(|_| Error::Unsupported(format!("exponent {x} too large")))?;
                }
                None => foreign.push((v, x)),
            }
        }
        Ok((Mono::from_exps(e), Monomial::from_pairs(foreign)))
    }

    fn to_monomial(&self, m: &Mono) -> Monomial {
        Monomial::from_pairs(
            self.vars.iter().enumerate().filter(|&(i, _)| m.e[i] > 0).map(|(i, &v)| (v, m.e[i] as u32)),
        )
    }
}

struct Ctx {
    field: Field,
    order: MonomialOrder,
    nvars: usize,
}

impl Ctx {
    fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        a.cmp_by(b, self.order, self.nvars)
    }

    fn sort(&self, terms: &mut Vec<Term>) {
        terms.sort_by(|a, b| self.cmp(&b.m, &a.m));
        // merge duplicates
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms.drain(..) {
            match out.last_mut() {
                Some(last) if last.m == t.m => last.c = self.field.add(last.c, t.c),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.c != 0);
        *terms = out;
    }

    fn make_monic(&self, f: &mut FpPoly) {
        if let Some(lead) = f.terms.first() {
            let inv = self.field.inv(lead.c);
            for t in f.terms.iter_mut() {
                t.c = self.field.mul(t.c, inv);
            }
        }
    }

    /// `f - c * m * g`, with `g` monic or not.
    fn sub_mul(&self, f: &[Term], c: u32, m: &Mono, g: &[Term]) -> Vec<Term> {
        let nc = self.field.neg(c);
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut gj: Option<Term> = g.first().map(|t| Term { m: t.m.mul(m), c: self.field.mul(t.c, nc) });
        while i < f.len() || gj.is_some() {
            let take = match (f.get(i), gj.as_ref()) {
                (Some(a), Some(b)) => self.cmp(&a.m, &b.m),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Greater => {
                    out.push(f[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(gj.unwrap());
                    j += 1;
                    gj = g.get(j).map(|t| Term { m: t.m.mul(m), c: self.field.mul(t.c, nc) });
                }
                Ordering::Equal => {
                    let s = self.field.add(f[i].c, gj.unwrap().c);
                    if s != 0 {
                        out.push(Term { m: f[i].m, c: s });
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(|t| Term { m: t.m.mul(m), c: self.field.mul(t.c, nc) });
                }
            }
        }
        out
    }
}

struct Element {
    poly: FpPoly,
    lm: Mono,
    sugar: u32,
    active: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    alive: bool,
}

/// Counters reported while a basis is being computed.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroebnerStats {
    pub input_generators: usize,
    pub pairs_processed: usize,
    pub pairs_pruned: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
    pub max_degree: u32,
    pub millis: u128,
}

/// A progress observer; called every few hundred processed pairs.
pub type Progress<'a> = &'a (dyn Fn(&GroebnerStats, usize) + Sync);

/// Reduced, monic Gröbner basis over `GF(prime)`.
#[derive(Clone)]
pub struct GroebnerBasis {
    prime: u32,
    order: MonomialOrder,
    layout: VarLayout,
    basis: Vec<FpPoly>,
    stats: GroebnerStats,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("prime", &self.prime)
            .field("order", &self.order)
            .field("len", &self.basis.len())
            .finish()
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::DomainMismatch(format!("{p} is not a prime")));
    }
    if p > (1 << 31) {
        return Err(Error::Unsupported(format!("prime {p} exceeds 2^31")));
    }
    Ok(())
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GroebnerBasis {
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|g| g.terms.len() == 1 && g.terms[0].m.deg == 0)
    }

    fn ctx(&self) -> Ctx {
        Ctx { field: Field { p: self.prime }, order: self.order, nvars: self.layout.vars.len() }
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|g| to_poly(&self.layout, g, self.prime, &Monomial::one())).collect()
    }

    /// Rebuilds a basis from stored generators without recomputation; the
    /// caller vouches that `gens` is a reduced Gröbner basis.
    pub fn from_trusted_generators(
        gens: &[Polynomial],
        prime: u32,
        order: MonomialOrder,
        layout: VarLayout,
        stats: GroebnerStats,
    ) -> Result<GroebnerBasis> {
        check_prime(prime)?;
        let ctx = Ctx { field: Field { p: prime }, order, nvars: layout.vars.len() };
        let mut basis = Vec::with_capacity(gens.len());
        for g in gens {
            let (f, foreign) = to_fp(&layout, &ctx, &g.to_prime(prime)?)?;
            if foreign {
                return Err(Error::DomainMismatch("generator uses variables outside the layout".into()));
            }
            basis.push(f);
        }
        Ok(GroebnerBasis { prime, order, layout, basis, stats })
    }

    /// Fully reduced remainder of `p` modulo the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        match p.domain() {
            Domain::Prime(q) if q == self.prime => {}
            d => {
                return Err(Error::DomainMismatch(format!("polynomial over {d}, basis over GF({})", self.prime)))
            }
        }
        let ctx = self.ctx();
        // group by the monomial in foreign variables
        let mut groups: BTreeMap<Monomial, Vec<Term>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (dense, foreign) = self.layout.split(m)?;
            let c = c.to_u32().expect("canonical GF(p) coefficient");
            groups.entry(foreign).or_default().push(Term { m: dense, c });
        }
        let refs: Vec<usize> = (0..self.basis.len()).collect();
        let mut out = Polynomial::zero(Domain::Prime(self.prime));
        for (foreign, mut terms) in groups {
            ctx.sort(&mut terms);
            let r = full_reduce(&ctx, FpPoly { terms }, &self.basis, &refs);
            let part = to_poly(&self.layout, &r, self.prime, &foreign);
            out = &out + &part;
        }
        Ok(out)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

fn to_fp(layout: &VarLayout, ctx: &Ctx, p: &Polynomial) -> Result<(FpPoly, bool)> {
    let mut foreign_seen = false;
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let (dense, foreign) = layout.split(m)?;
        if !foreign.is_one() {
            foreign_seen = true;
        }
        terms.push(Term { m: dense, c: c.to_u32().expect("canonical GF(p) coefficient") });
    }
    ctx.sort(&mut terms);
    Ok((FpPoly { terms }, foreign_seen))
}

fn to_poly(layout: &VarLayout, f: &FpPoly, p: u32, foreign: &Monomial) -> Polynomial {
    Polynomial::from_terms(
        Domain::Prime(p),
        f.terms.iter().map(|t| (layout.to_monomial(&t.m).mul(foreign), BigInt::from(t.c))),
    )
}

fn find_reducer(m: &Mono, basis: &[FpPoly], refs: &[usize]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &k in refs {
        let g = &basis[k];
        if g.terms[0].m.divides(m) {
            match best {
                Some(b) if basis[b].terms.len() <= g.terms.len() => {}
                _ => best = Some(k),
            }
        }
    }
    best
}

/// Reduces every term of `f` against `basis[refs]`.
fn full_reduce(ctx: &Ctx, f: FpPoly, basis: &[FpPoly], refs: &[usize]) -> FpPoly {
    let mut rest = f.terms;
    let mut done: Vec<Term> = Vec::new();
    while let Some(lead) = rest.first().copied() {
        match find_reducer(&lead.m, basis, refs) {
            Some(k) => {
                let g = &basis[k].terms;
                let q = lead.m.div(&g[0].m);
                let c = ctx.field.mul(lead.c, ctx.field.inv(g[0].c));
                rest = ctx.sub_mul(&rest, c, &q, g);
            }
            None => {
                done.push(lead);
                rest.remove(0);
            }
        }
    }
    FpPoly { terms: done }
}

/// Reduces the leading term until it is irreducible; tracks sugar.
fn top_reduce(ctx: &Ctx, mut f: Vec<Term>, mut sugar: u32, elems: &[Element], active: &[usize]) -> (Vec<Term>, u32) {
    loop {
        let Some(lead) = f.first().copied() else { return (f, sugar) };
        let mut best: Option<usize> = None;
        for &k in active {
            let e = &elems[k];
            if e.lm.divides(&lead.m) {
                match best {
                    Some(b) if elems[b].poly.terms.len() <= e.poly.terms.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        let Some(k) = best else { return (f, sugar) };
        let g = &elems[k].poly.terms;
        let q = lead.m.div(&g[0].m);
        sugar = sugar.max(q.deg + elems[k].sugar);
        // elements are monic
        f = ctx.sub_mul(&f, lead.c, &q, g);
    }
}

fn tail_reduce(ctx: &Ctx, f: Vec<Term>, elems: &[Element], active: &[usize]) -> Vec<Term> {
    if f.is_empty() {
        return f;
    }
    let mut out = vec![f[0]];
    let mut rest: Vec<Term> = f[1..].to_vec();
    while let Some(lead) = rest.first().copied() {
        let mut best: Option<usize> = None;
        for &k in active {
            let e = &elems[k];
            if e.lm.divides(&lead.m) {
                match best {
                    Some(b) if elems[b].poly.terms.len() <= e.poly.terms.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        match best {
            Some(k) => {
                let g = &elems[k].poly.terms;
                let q = lead.m.div(&g[0].m);
                rest = ctx.sub_mul(&rest, lead.c, &q, g);
            }
            None => {
                out.push(lead);
                rest.remove(0);
            }
        }
    }
    out
}

/// Computes the reduced Gröbner basis of `gens` over `GF(prime)`.
///
/// Integer generators are reduced modulo `prime` first. Extra variables in
/// `extra_vars` are added to the layout even if no generator uses them.
pub fn buchberger(
    gens: &[Polynomial],
    prime: u32,
    order: MonomialOrder,
    progress: Option<Progress<'_>>,
) -> Result<GroebnerBasis> {
    check_prime(prime)?;
    let mut vars = Vec::new();
    let mut modp = Vec::with_capacity(gens.len());
    for g in gens {
        let g = g.to_prime(prime)?;
        vars.extend(g.vars());
        modp.push(g);
    }
    let layout = VarLayout::new(vars)?;
    let ctx = Ctx { field: Field { p: prime }, order, nvars: layout.vars.len() };
    let start = Instant::now();
    let mut stats = GroebnerStats { input_generators: gens.len(), ..Default::default() };

    let mut elems: Vec<Element> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    // (sugar, lcm key, i, j) ; inputs are queued as (i, usize::MAX) pseudo-pairs
    type Key = Reverse<(u32, Vec<u8>, usize, usize)>;
    let mut queue: BinaryHeap<Key> = BinaryHeap::new();
    let mut inputs: Vec<(FpPoly, u32)> = Vec::new();
    for g in &modp {
        let (f, _) = to_fp(&layout, &ctx, g)?;
        if f.terms.is_empty() {
            continue;
        }
        let sugar = f.terms.iter().map(|t| t.m.deg).max().unwrap_or(0);
        let key = f.terms[0].m.sort_key(order, ctx.nvars);
        queue.push(Reverse((sugar, key, inputs.len(), usize::MAX)));
        inputs.push((f, sugar));
    }

    let mut unit = false;
    while let Some(Reverse((_, _, i, j))) = queue.pop() {
        let (spoly, sugar) = if j == usize::MAX {
            let (f, s) = std::mem::take(&mut inputs[i]);
            (f.terms, s)
        } else {
            let pair = &pairs[i];
            if !pair.alive {
                continue;
            }
            stats.pairs_processed += 1;
            let (a, b) = (&elems[pair.i], &elems[pair.j]);
            let ua = pair.lcm.div(&a.lm);
            let ub = pair.lcm.div(&b.lm);
            let sugar = (ua.deg + a.sugar).max(ub.deg + b.sugar);
            // S = ua*a - ub*b (both monic), computed without the cancelling leads
            let fa: Vec<Term> = a.poly.terms[1..].iter().map(|t| Term { m: t.m.mul(&ua), c: t.c }).collect();
            let s = ctx.sub_mul(&fa, 1, &ub, &b.poly.terms[1..]);
            (s, sugar)
        };
        if let Some(cb) = progress {
            if stats.pairs_processed.is_multiple_of(250) && j != usize::MAX {
                stats.basis_size = active.len();
                stats.millis = start.elapsed().as_millis();
                cb(&stats, queue.len());
            }
        }
        let (mut h, sugar) = top_reduce(&ctx, spoly, sugar, &elems, &active);
        if h.is_empty() {
            if j != usize::MAX {
                stats.zero_reductions += 1;
            }
            continue;
        }
        let mut hp = FpPoly { terms: std::mem::take(&mut h) };
        ctx.make_monic(&mut hp);
        hp.terms = tail_reduce(&ctx, hp.terms, &elems, &active);
        let lm = hp.terms[0].m;
        stats.max_degree = stats.max_degree.max(lm.deg);
        let k = elems.len();
        elems.push(Element { poly: hp, lm, sugar, active: true });
        if lm.deg == 0 {
            unit = true;
            active.clear();
            active.push(k);
            break;
        }
        update(&ctx, &mut elems, &mut active, &mut pairs, &mut queue, k, &mut stats);
    }

    // minimal + reduced basis
    let mut mins: Vec<usize> = if unit { vec![*active.last().unwrap()] } else { active.clone() };
    mins.sort_by(|&a, &b| ctx.cmp(&elems[a].lm, &elems[b].lm));
    let mut basis: Vec<FpPoly> = mins.iter().map(|&k| elems[k].poly.clone()).collect();
    let all: Vec<usize> = (0..basis.len()).collect();
    for idx in 0..basis.len() {
        let lead = basis[idx].terms[0];
        let tail = FpPoly { terms: basis[idx].terms[1..].to_vec() };
        let others: Vec<usize> = all.iter().copied().filter(|&k| k != idx).collect();
        let mut r = full_reduce(&ctx, tail, &basis, &others);
        r.terms.insert(0, lead);
        ctx.make_monic(&mut r);
        basis[idx] = r;
    }
    stats.basis_size = basis.len();
    stats.millis = start.elapsed().as_millis();
    Ok(GroebnerBasis { prime, order, layout, basis, stats })
}

fn update(
    ctx: &Ctx,
    elems: &mut [Element],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    queue: &mut BinaryHeap<Reverse<(u32, Vec<u8>, usize, usize)>>,
    k: usize,
    stats: &mut GroebnerStats,
) {
    let h = elems[k].lm;
    // candidate pairs with the new element
    let mut cands: Vec<(usize, Mono, bool)> =
        active.iter().map(|&i| (i, elems[i].lm.lcm(&h), elems[i].lm.coprime(&h))).collect();
    let total = cands.len();
    // criterion M: drop pairs whose lcm is properly divisible by another candidate's lcm
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a != b && cands[b].1.deg < cands[a].1.deg && cands[b].1.divides(&cands[a].1) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut kept: Vec<(usize, Mono, bool)> = cands.drain(..).zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    // criterion F: one pair per lcm; drop the class if any member is coprime
    kept.sort_by(|a, b| ctx.cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
    let mut chosen: Vec<(usize, Mono)> = Vec::new();
    let mut s = 0;
    while s < kept.len() {
        let mut t = s;
        let mut any_coprime = false;
        while t < kept.len() && kept[t].1 == kept[s].1 {
            any_coprime |= kept[t].2;
            t += 1;
        }
        if !any_coprime {
            chosen.push((kept[s].0, kept[s].1));
        }
        s = t;
    }
    // criterion B on old pairs
    for p in pairs.iter_mut().filter(|p| p.alive) {
        if h.divides(&p.lcm) {
            let li = elems[p.i].lm.lcm(&h);
            let lj = elems[p.j].lm.lcm(&h);
            if li != p.lcm && lj != p.lcm {
                p.alive = false;
                stats.pairs_pruned += 1;
            }
        }
    }
    stats.pairs_pruned += total - chosen.len();
    for (i, lcm) in chosen {
        let (a, b) = (&elems[i], &elems[k]);
        let sugar = (lcm.div(&a.lm).deg + a.sugar).max(lcm.div(&b.lm).deg + b.sugar);
        let idx = pairs.len();
        pairs.push(Pair { i, j: k, lcm, alive: true });
        queue.push(Reverse((sugar, lcm.sort_key(ctx.order, ctx.nvars), idx, 0)));
    }
    // retire elements whose leading monomial is now redundant
    active.retain(|&i| {
        let redundant = h.divides(&elems[i].lm);
        if redundant {
            elems[i].active = false;
        }
        !redundant
    });
    active.push(k);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p7(s: &str) -> Polynomial {
        Polynomial::parse(Domain::Prime(7), s).unwrap()
    }

    #[test]
    fn textbook_ideal_contains_y_minus_x() {
        let g = buchberger(&[p7("x[0]^2 - 1"), p7("x[0]*x[1] - 1")], 7, MonomialOrder::DegRevLex, None).unwrap();
        assert!(g.contains(&p7("x[1] - x[0]")).unwrap());
        assert!(!g.contains(&p7("x[1]")).unwrap());
        // reduced basis {x - y, y^2 - 1}
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn principal_monomial_ideal() {
        let g = buchberger(&[p7("x[0]")], 7, MonomialOrder::DegRevLex, None).unwrap();
        assert_eq!(g.generators(), vec![p7("x[0]")]);
        assert_eq!(g.normal_form(&p7("1")).unwrap(), p7("1"));
        assert!(!g.is_unit_ideal());
    }

    #[test]
    fn unit_ideal_detected() {
        let g = buchberger(&[p7("x[0]*x[1] - 1"), p7("x[0]")], 7, MonomialOrder::DegRevLex, None).unwrap();
        assert!(g.is_unit_ideal());
        assert!(g.contains(&p7("1")).unwrap());
    }

    #[test]
    fn foreign_variables_ride_along() {
        let g = buchberger(&[p7("x[0]^2 - 1")], 7, MonomialOrder::DegRevLex, None).unwrap();
        assert_eq!(g.normal_form(&p7("x[0]^2*delta + x[0]^3")).unwrap(), p7("delta + x[0]"));
    }

    #[test]
    fn rejects_non_prime_and_domain_mismatch() {
        assert!(buchberger(&[p7("x[0]")], 8, MonomialOrder::DegRevLex, None).is_err());
        let g = buchberger(&[p7("x[0]")], 7, MonomialOrder::DegRevLex, None).unwrap();
        let q = Polynomial::parse(Domain::Prime(5), "x[0]").unwrap();
        assert!(matches!(g.normal_form(&q), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn every_order_gives_a_basis_for_cyclic3() {
        let gens = [
            "x[0] + x[1] + x[2]",
            "x[0]*x[1] + x[1]*x[2] + x[2]*x[0]",
            "x[0]*x[1]*x[2] - 1",
        ]
        .map(|s| Polynomial::parse(Domain::Prime(32003), s).unwrap());
        for order in [MonomialOrder::DegRevLex, MonomialOrder::DegLex, MonomialOrder::Lex] {
            let g = buchberger(&gens, 32003, order, None).unwrap();
            for f in &gens {
                assert!(g.contains(f).unwrap(), "{order:?}");
            }
            // x^3 - 1 lies in the ideal (x is a cube root of unity times ...)
            let x3 = Polynomial::parse(Domain::Prime(32003), "x[0]^3 - 1").unwrap();
            assert!(g.contains(&x3).unwrap());
            assert!(!g.contains(&Polynomial::parse(Domain::Prime(32003), "x[0] - 1").unwrap()).unwrap());
        }
    }
}
