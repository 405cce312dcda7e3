//! The correspondence `Phi` from marked pipe dreams of `w` to pipe dreams
//! of the covers `t_ab w` below a dominant `pi`, its fibers, and the
//! verifiers for the `Delta` and `Nabla` identities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Pos, Transposition};
use crate::pipedream::{dominated_positions, enumerate, Cutoffs, MarkedPipeDream, PipeDream, Trace};
use crate::poly::{padded_schubert_of, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkClass {
    P0,
    PA,
    PB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlignKind {
    A,
    B,
}

impl AlignKind {
    fn name(self) -> &'static str {
        match self {
            AlignKind::A => "A",
            AlignKind::B => "B",
        }
    }
}

impl fmt::Display for MarkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MarkClass::P0 => "0",
            MarkClass::PA => "A",
            MarkClass::PB => "B",
        })
    }
}

impl From<AlignKind> for MarkClass {
    fn from(kind: AlignKind) -> Self {
        match kind {
            AlignKind::A => MarkClass::PA,
            AlignKind::B => MarkClass::PB,
        }
    }
}

/// A run of `Phi` on one marked pipe dream.
///
/// `steps` starts at the first aligned pair (for class `P0`, the input) and
/// ends at the pair handed to `Phi_0`; `k` is zero for class `P0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTrace {
    pub kind: MarkClass,
    pub k: usize,
    pub cover: Transposition,
    pub steps: Vec<MarkedPipeDream>,
    pub result: PipeDream,
}

impl PhiTrace {
    /// Number of `phi_{*,k}` applications.
    pub fn aligned_steps(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn last(&self) -> &MarkedPipeDream {
        self.steps.last().expect("a trace has at least one step")
    }
}

#[derive(Serialize)]
struct PhiTraceRepr<'a> {
    kind: String,
    k: usize,
    cover: [usize; 2],
    steps: &'a [MarkedPipeDream],
    result: &'a PipeDream,
}

impl Serialize for PhiTrace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PhiTraceRepr {
            kind: self.kind.to_string(),
            k: self.k,
            cover: [self.cover.a, self.cover.b],
            steps: &self.steps,
            result: &self.result,
        }
        .serialize(serializer)
    }
}

/// `A(w, t_ab w)` and `B(w, t_ab w)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatisticSets {
    #[serde(rename = "A")]
    pub a: BTreeSet<usize>,
    #[serde(rename = "B")]
    pub b: BTreeSet<usize>,
}

impl StatisticSets {
    /// `1 + |A| + |B|`.
    pub fn coefficient(&self) -> usize {
        1 + self.a.len() + self.b.len()
    }
}

/// Marked pipe dreams mapping to one pipe dream, split by class; the
/// `A` and `B` parts are keyed by the pipe `k` of their run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fiber {
    pub zero: Vec<MarkedPipeDream>,
    pub a: Vec<(usize, MarkedPipeDream)>,
    pub b: Vec<(usize, MarkedPipeDream)>,
}

impl Fiber {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.zero.len(), self.a.len(), self.b.len())
    }

    pub fn len(&self) -> usize {
        self.zero.len() + self.a.len() + self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> BTreeSet<MarkedPipeDream> {
        self.zero
            .iter()
            .chain(self.a.iter().map(|(_, m)| m))
            .chain(self.b.iter().map(|(_, m)| m))
            .cloned()
            .collect()
    }

    fn insert(&mut self, kind: MarkClass, k: usize, m: MarkedPipeDream) {
        match kind {
            MarkClass::P0 => self.zero.push(m),
            MarkClass::PA => self.a.push((k, m)),
            MarkClass::PB => self.b.push((k, m)),
        }
    }

    fn sort(&mut self) {
        self.zero.sort();
        self.a.sort();
        self.b.sort();
    }
}

/// Pipe labels and cutoffs for a fixed `w <=_L pi`, shared by every marked
/// pipe dream of `w`.
#[derive(Clone, Debug)]
pub struct PhiContext {
    w: Permutation,
    cut: Cutoffs,
}

impl PhiContext {
    pub fn new(w: &Permutation, pi: &Permutation) -> Result<Self> {
        Ok(PhiContext {
            w: w.clone(),
            cut: Cutoffs::new(w, pi)?,
        })
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn pi(&self) -> &Permutation {
        &self.cut.pi
    }

    fn check_permutation(&self, pd: &PipeDream) -> Result<()> {
        if pd.permutation() != &self.w {
            return Err(Error::Invariant(format!(
                "pipe dream has permutation {}, expected {}",
                pd.permutation(),
                self.w
            )));
        }
        Ok(())
    }

    /// A trace containing the mark, the windows of `w` and `pi`, and pipe
    /// `k` from entry to exit.
    fn trace_for(&self, mpd: &MarkedPipeDream, k: usize) -> std::sync::Arc<Trace> {
        let size = [
            self.w.n(),
            self.cut.pi.n(),
            mpd.pd.bounding_window(),
            mpd.mark.i,
            mpd.mark.j,
            k,
            self.w.position_of(k),
        ]
        .into_iter()
        .max()
        .unwrap_or(0)
            + 1;
        mpd.pd.trace_at_least(size)
    }

    fn is_dominated(&self, p: Pos, s: usize) -> bool {
        p.i <= self.cut.row_cutoff(s)
    }

    fn w_inv(&self, k: usize) -> usize {
        self.cut.w_inv.apply(k)
    }

    fn pi_w_inv(&self, k: usize) -> usize {
        self.cut.pi_w_inv(k)
    }

    /// The class of a marked pipe dream in `DeltaPD(w)`.
    pub fn classify(&self, mpd: &MarkedPipeDream) -> Result<MarkClass> {
        self.check_permutation(&mpd.pd)?;
        let t = mpd.labels();
        if !self.is_dominated(mpd.mark, t.s) {
            return Err(Error::NotDominated(mpd.mark));
        }
        let (a, b) = (t.w, t.s);
        let class = if b < a {
            MarkClass::PA
        } else if self.pi_w_inv(a) > self.pi_w_inv(b) {
            MarkClass::P0
        } else {
            MarkClass::PB
        };
        debug_assert_eq!(
            class == MarkClass::P0,
            a < b && self.pi_w_inv(a) > self.pi_w_inv(b)
        );
        Ok(class)
    }

    /// `p` lies weakly northwest of pipe `k`.
    pub fn is_northwest(&self, mpd: &MarkedPipeDream, p: Pos, k: usize) -> bool {
        self.trace_for(mpd, k).is_weakly_northwest_of(p, k)
    }

    /// `(*,k)`-alignment of the mark.
    pub fn is_aligned(&self, mpd: &MarkedPipeDream, k: usize, kind: AlignKind) -> bool {
        let a = mpd.labels().w;
        if a >= k || !self.is_northwest(mpd, mpd.mark, k) {
            return false;
        }
        match kind {
            AlignKind::A => self.w_inv(a) > self.w_inv(k),
            AlignKind::B => {
                self.pi_w_inv(a) < self.pi_w_inv(k) && mpd.mark.i <= self.cut.row_cutoff(k)
            }
        }
    }

    /// `Sigma_{*,k}`: positions weakly northwest of both pipe `w_p` and
    /// pipe `k`, cut off at row `lambda'_{pi w^{-1}(k)}` for kind `B`.
    pub fn sigma(&self, mpd: &MarkedPipeDream, k: usize, kind: AlignKind) -> BTreeSet<Pos> {
        let a = mpd.labels().w;
        let trace = self.trace_for(mpd, k.max(a));
        let reach_a = reach(&trace, a);
        let reach_k = reach(&trace, k);
        let rows = match kind {
            AlignKind::A => trace.size(),
            AlignKind::B => self.cut.row_cutoff(k).min(trace.size()),
        };
        (1..=rows)
            .flat_map(|i| (1..=reach_a[i].min(reach_k[i])).map(move |j| Pos::new(i, j)))
            .collect()
    }

    /// One application of `phi_{*,k}`: slide, then swap when the slid pair
    /// is swappable and its swap is still `(*,k)`-aligned.
    pub fn phi_step(&self, mpd: &MarkedPipeDream, k: usize, kind: AlignKind) -> Result<MarkedPipeDream> {
        if !self.is_aligned(mpd, k, kind) {
            return Err(Error::NotAligned {
                mark: mpd.mark,
                kind: kind.name(),
                k,
            });
        }
        let slid = mpd.slide()?;
        if slid.is_swappable() {
            let swapped = slid.swap()?;
            if self.is_aligned(&swapped, k, kind) {
                return Ok(swapped);
            }
        }
        Ok(slid)
    }

    /// `Phi_0`: replace the marked bump by a cross.
    pub fn phi0(&self, mpd: &MarkedPipeDream) -> Result<(PipeDream, Transposition)> {
        if self.classify(mpd)? != MarkClass::P0 {
            return Err(Error::NotClassZero(mpd.mark));
        }
        let t = mpd.labels();
        let cover = Transposition::new(t.w, t.s)?;
        let q = mpd.pd.toggled(mpd.mark)?;
        if q.permutation() != &cover.left_mul(&self.w) || !q.permutation().leq_weak(self.pi()) {
            return Err(Error::Invariant(format!(
                "crossing at {} does not give a cover below {}",
                mpd.mark,
                self.pi()
            )));
        }
        Ok((q, cover))
    }

    /// The full run of `Phi` on a marked pipe dream.
    pub fn phi(&self, mpd: &MarkedPipeDream) -> Result<PhiTrace> {
        let class = self.classify(mpd)?;
        let (kind, k, start) = match class {
            MarkClass::P0 => {
                let (result, cover) = self.phi0(mpd)?;
                return Ok(PhiTrace {
                    kind: class,
                    k: 0,
                    cover,
                    steps: vec![mpd.clone()],
                    result,
                });
            }
            MarkClass::PA => (AlignKind::A, mpd.labels().w, mpd.swap()?),
            MarkClass::PB => (AlignKind::B, mpd.labels().s, mpd.clone()),
        };
        if !self.is_aligned(&start, k, kind) {
            return Err(Error::Invariant(format!(
                "starting pair at {} is not ({},{k})-aligned",
                start.mark,
                kind.name()
            )));
        }
        let cap = self.sigma(&start, k, kind).len();
        let mut steps = vec![start];
        loop {
            let cur = steps.last().expect("nonempty");
            if !self.is_aligned(cur, k, kind) {
                break;
            }
            if steps.len() > cap {
                return Err(Error::Invariant(format!(
                    "phi chain for k = {k} exceeds {cap} steps"
                )));
            }
            let next = self.phi_step(cur, k, kind)?;
            debug_assert!(next.labels().w <= cur.labels().w && next.labels().s != k);
            debug_assert!({
                let (before, after) = (self.sigma(cur, k, kind), self.sigma(&next, k, kind));
                after.is_subset(&before) && after.len() < before.len()
            });
            steps.push(next);
        }
        let (result, cover) = self.phi0(steps.last().expect("nonempty"))?;
        Ok(PhiTrace {
            kind: class,
            k,
            cover,
            steps,
            result,
        })
    }

    /// `DeltaPD(w)`: every pipe dream of `w` with one dominated bump marked.
    pub fn delta_pairs(&self) -> Result<Vec<MarkedPipeDream>> {
        delta_pairs_of(&enumerate(&self.w), self.pi())
    }

    /// `A(w, t w)` and `B(w, t w)` for a cover `w -> t w` below `pi`.
    pub fn ab_sets(&self, t: Transposition) -> Result<StatisticSets> {
        if !self.w.covers_below(self.pi())?.contains(&t) {
            return Err(Error::NotACover {
                w: self.w.clone(),
                t,
                pi: self.pi().clone(),
            });
        }
        let bound = self.w.n().max(self.pi().n()).max(t.b);
        let (a, b) = (t.a, t.b);
        let above = (b + 1)..=bound;
        Ok(StatisticSets {
            a: above
                .clone()
                .filter(|&k| self.w_inv(a) < self.w_inv(k) && self.w_inv(k) < self.w_inv(b))
                .collect(),
            b: above
                .filter(|&k| {
                    self.pi_w_inv(b) < self.pi_w_inv(k) && self.pi_w_inv(k) < self.pi_w_inv(a)
                })
                .collect(),
        })
    }

    /// `Phi_0^{-1}(Q)`: un-cross pipes `a` and `b`.
    pub fn phi0_inverse(&self, q: &PipeDream, t: Transposition) -> Result<MarkedPipeDream> {
        self.check_cover_target(q, t)?;
        let p = q
            .trace_at_least(0)
            .crossing_of(t.a, t.b)
            .ok_or_else(|| Error::Invariant(format!("pipes {} and {} do not cross", t.a, t.b)))?;
        let mpd = MarkedPipeDream::new(q.toggled(p)?, p)?;
        self.check_permutation(&mpd.pd)?;
        Ok(mpd)
    }

    fn check_cover_target(&self, q: &PipeDream, t: Transposition) -> Result<()> {
        if !self.w.covers_below(self.pi())?.contains(&t) {
            return Err(Error::NotACover {
                w: self.w.clone(),
                t,
                pi: self.pi().clone(),
            });
        }
        if q.permutation() != &t.left_mul(&self.w) {
            return Err(Error::Invariant(format!(
                "pipe dream has permutation {}, expected {}",
                q.permutation(),
                t.left_mul(&self.w)
            )));
        }
        Ok(())
    }

    /// The unique aligned pair that `phi_{*,k}` sends to `cur`.
    fn unstep(&self, cur: &MarkedPipeDream, k: usize, kind: AlignKind) -> Result<MarkedPipeDream> {
        let candidate = match cur.is_swappable().then(|| cur.swap()).transpose()? {
            Some(swapped)
                if self.is_aligned(cur, k, kind)
                    && self.is_northwest(&swapped, swapped.mark, k)
                    && (kind == AlignKind::A || swapped.mark.i <= self.cut.row_cutoff(k)) =>
            {
                east_bump(&swapped)
            }
            _ => east_bump(cur),
        };
        if !self.is_aligned(&candidate, k, kind) || &self.phi_step(&candidate, k, kind)? != cur {
            return Err(Error::Invariant(format!(
                "no ({},{k})-aligned preimage of the pair marked at {}",
                kind.name(),
                cur.mark
            )));
        }
        Ok(candidate)
    }

    /// The member of `Phi_*^{-1}(Q)` whose run uses pipe `k`, rebuilt by
    /// running the chain backwards from `Phi_0^{-1}(Q)`.
    pub fn backward(&self, q: &PipeDream, t: Transposition, k: usize, kind: AlignKind) -> Result<MarkedPipeDream> {
        let seed = self.phi0_inverse(q, t)?;
        let cap = {
            let size = self.trace_for(&seed, k).size();
            size * size
        };
        let mut cur = self.unstep(&seed, k, kind)?;
        let mut steps = 1;
        while cur.labels().s != k {
            if steps > cap {
                return Err(Error::Invariant(format!(
                    "backward chain for k = {k} exceeds {cap} steps"
                )));
            }
            cur = self.unstep(&cur, k, kind)?;
            steps += 1;
        }
        match kind {
            AlignKind::A => cur.swap(),
            AlignKind::B => Ok(cur),
        }
    }

    /// Every run of `Phi` on `DeltaPD(w)`, grouped by the resulting pipe
    /// dream.
    pub fn forward_fibers(&self) -> Result<BTreeMap<PipeDream, Fiber>> {
        let mut out: BTreeMap<PipeDream, Fiber> = BTreeMap::new();
        for mpd in self.delta_pairs()? {
            let run = self.phi(&mpd)?;
            out.entry(run.result).or_default().insert(run.kind, run.k, mpd);
        }
        for fiber in out.values_mut() {
            fiber.sort();
        }
        Ok(out)
    }

    /// `Phi^{-1}(Q)` by running `Phi` on all of `DeltaPD(w)`.
    pub fn fiber_forward(&self, q: &PipeDream, t: Transposition) -> Result<Fiber> {
        self.check_cover_target(q, t)?;
        Ok(self.forward_fibers()?.remove(q).unwrap_or_default())
    }

    /// `Phi^{-1}(Q)` from `Phi_0^{-1}(Q)` and one backward chain per
    /// `k` in `A` and in `B`.
    pub fn fiber_backward(&self, q: &PipeDream, t: Transposition) -> Result<Fiber> {
        let sets = self.ab_sets(t)?;
        let mut fiber = Fiber::default();
        fiber.zero.push(self.phi0_inverse(q, t)?);
        for &k in &sets.a {
            fiber.a.push((k, self.backward(q, t, k, AlignKind::A)?));
        }
        for &k in &sets.b {
            fiber.b.push((k, self.backward(q, t, k, AlignKind::B)?));
        }
        fiber.sort();
        Ok(fiber)
    }

    /// `x_{i_p}/y_{i_p} x^{P(+)} y^{P(bump) cap P(pi)}` for a marked pipe
    /// dream and the dominated set of its pipe dream.
    pub fn marked_weight(&self, mpd: &MarkedPipeDream) -> Result<Monomial> {
        let dominated = dominated_positions(&mpd.pd, self.pi())?;
        if !dominated.contains(mpd.mark) {
            return Err(Error::NotDominated(mpd.mark));
        }
        let x = mpd.pd.crosses().iter().chain(std::iter::once(&mpd.mark));
        let y = dominated
            .positions
            .iter()
            .filter(|&&p| p != mpd.mark && !mpd.pd.is_cross(p));
        Ok(&Monomial::x_of(x) * &Monomial::y_of(y))
    }

    /// `x^{Q(+)} y^{Q(bump) cap Q(pi)}`: the weight of `Q` in the padded
    /// Schubert polynomial of its own permutation.
    pub fn result_weight(&self, q: &PipeDream) -> Result<Monomial> {
        let dominated = dominated_positions(q, self.pi())?;
        let y = dominated.positions.iter().filter(|&&p| !q.is_cross(p));
        Ok(&Monomial::x_of(q.crosses()) * &Monomial::y_of(y))
    }

    /// `x^{Q(+)} y^{Q(bump) cap P(pi)}` with `P(pi)` the dominated set of
    /// the input. This agrees with [`Self::result_weight`] only when the
    /// two dominated sets coincide.
    pub fn result_weight_against_input(&self, input: &MarkedPipeDream, q: &PipeDream) -> Result<Monomial> {
        let dominated = dominated_positions(&input.pd, self.pi())?;
        let y = dominated.positions.iter().filter(|&&p| !q.is_cross(p));
        Ok(&Monomial::x_of(q.crosses()) * &Monomial::y_of(y))
    }
}

/// For each row, the largest column reached by pipe `k` at or below that
/// row; index 0 is unused.
fn reach(trace: &Trace, k: usize) -> Vec<usize> {
    let mut out = vec![0; trace.size() + 2];
    for t in trace.pipe_tiles(k) {
        out[t.i] = out[t.i].max(t.j);
    }
    for i in (1..=trace.size()).rev() {
        out[i] = out[i].max(out[i + 1]);
    }
    out
}

/// The mark moved to the first bump east in its row: the inverse of slide.
fn east_bump(mpd: &MarkedPipeDream) -> MarkedPipeDream {
    let row = mpd.mark.i;
    let mark = ((mpd.mark.j + 1)..)
        .map(|j| Pos::new(row, j))
        .find(|&p| !mpd.pd.is_cross(p))
        .expect("finitely many crosses");
    MarkedPipeDream {
        pd: mpd.pd.clone(),
        mark,
    }
}

pub(crate) fn delta_pairs_of(pds: &[PipeDream], pi: &Permutation) -> Result<Vec<MarkedPipeDream>> {
    let mut out = Vec::new();
    for pd in pds {
        let dominated = dominated_positions(pd, pi)?;
        for &p in &dominated.positions {
            if !pd.is_cross(p) {
                out.push(MarkedPipeDream {
                    pd: pd.clone(),
                    mark: p,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn classify(mpd: &MarkedPipeDream, pi: &Permutation) -> Result<MarkClass> {
    PhiContext::new(mpd.permutation(), pi)?.classify(mpd)
}

pub fn delta_pairs(w: &Permutation, pi: &Permutation) -> Result<Vec<MarkedPipeDream>> {
    PhiContext::new(w, pi)?.delta_pairs()
}

pub fn is_aligned(mpd: &MarkedPipeDream, k: usize, kind: AlignKind, pi: &Permutation) -> Result<bool> {
    Ok(PhiContext::new(mpd.permutation(), pi)?.is_aligned(mpd, k, kind))
}

pub fn sigma(mpd: &MarkedPipeDream, k: usize, kind: AlignKind, pi: &Permutation) -> Result<BTreeSet<Pos>> {
    Ok(PhiContext::new(mpd.permutation(), pi)?.sigma(mpd, k, kind))
}

pub fn phi_step(mpd: &MarkedPipeDream, k: usize, kind: AlignKind, pi: &Permutation) -> Result<MarkedPipeDream> {
    PhiContext::new(mpd.permutation(), pi)?.phi_step(mpd, k, kind)
}

pub fn phi0(mpd: &MarkedPipeDream, pi: &Permutation) -> Result<(PipeDream, Transposition)> {
    PhiContext::new(mpd.permutation(), pi)?.phi0(mpd)
}

pub fn phi(mpd: &MarkedPipeDream, pi: &Permutation) -> Result<PhiTrace> {
    PhiContext::new(mpd.permutation(), pi)?.phi(mpd)
}

pub fn ab_sets(w: &Permutation, t: Transposition, pi: &Permutation) -> Result<StatisticSets> {
    PhiContext::new(w, pi)?.ab_sets(t)
}

/// `Phi^{-1}(Q)` for `Q` a pipe dream of `t w`, computed forward and
/// backward; the two must agree.
pub fn fiber(q: &PipeDream, w: &Permutation, t: Transposition, pi: &Permutation) -> Result<Fiber> {
    let ctx = PhiContext::new(w, pi)?;
    let forward = ctx.fiber_forward(q, t)?;
    let backward = ctx.fiber_backward(q, t)?;
    if forward != backward {
        return Err(Error::Invariant(format!(
            "forward fiber {:?} and backward fiber {:?} differ",
            forward.counts(),
            backward.counts()
        )));
    }
    Ok(forward)
}

/// One term of the right-hand side of the `Delta` identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverTerm {
    #[serde(serialize_with = "pair")]
    pub t: Transposition,
    pub coeff: usize,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
}

fn pair<S: serde::Serializer>(t: &Transposition, s: S) -> std::result::Result<S::Ok, S::Error> {
    [t.a, t.b].serialize(s)
}

/// A monomial whose coefficients differ between the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of checking one side of an identity against the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub ok: bool,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub covers: Vec<CoverTerm>,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    fn new(lhs: Polynomial, rhs: Polynomial, covers: Vec<CoverTerm>) -> Self {
        let mismatches: Vec<Mismatch> = lhs
            .differences(&rhs)
            .into_iter()
            .map(|(m, l, r)| Mismatch {
                monomial: m.to_string(),
                lhs: l.to_string(),
                rhs: r.to_string(),
            })
            .collect();
        Report {
            ok: mismatches.is_empty(),
            lhs,
            rhs,
            covers,
            mismatches,
        }
    }
}

/// `Delta S^pi_w = sum over covers w -> t_ab w below pi of
/// (1 + |A| + |B|) S^pi_{t_ab w}`.
pub fn verify_delta(w: &Permutation, pi: &Permutation) -> Result<Report> {
    let ctx = PhiContext::new(w, pi)?;
    let lhs = padded_schubert_of(&enumerate(w), pi)?.delta();
    let mut rhs = Polynomial::zero();
    let mut covers = Vec::new();
    for t in w.covers_below(pi)? {
        let sets = ctx.ab_sets(t)?;
        let coeff = sets.coefficient();
        rhs = &rhs + &padded_schubert_of(&enumerate(&t.left_mul(w)), pi)?.scale(coeff);
        covers.push(CoverTerm {
            t,
            coeff,
            a: sets.a.into_iter().collect(),
            b: sets.b.into_iter().collect(),
        });
    }
    Ok(Report::new(lhs, rhs, covers))
}

/// `Nabla S^pi_w = sum over k with s_k w below w of k S^pi_{s_k w}`.
pub fn verify_nabla(w: &Permutation, pi: &Permutation) -> Result<Report> {
    PhiContext::new(w, pi)?;
    let lhs = padded_schubert_of(&enumerate(w), pi)?.nabla();
    let rhs = w
        .weak_descents()
        .into_iter()
        .map(|k| {
            let lower = Transposition::simple(k).left_mul(w);
            Ok(padded_schubert_of(&enumerate(&lower), pi)?.scale(k))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(Report::new(lhs, rhs, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(s: &str) -> Permutation {
        Permutation::from_one_line(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    fn pd(list: &[(usize, usize)]) -> PipeDream {
        PipeDream::new(list.iter().map(|&c| Pos::from(c))).unwrap()
    }

    fn marked(list: &[(usize, usize)], mark: (usize, usize)) -> MarkedPipeDream {
        MarkedPipeDream::new(pd(list), Pos::from(mark)).unwrap()
    }

    #[test]
    fn smallest_cover() {
        let pi = digits("21");
        let m = marked(&[], (1, 1));
        assert_eq!(classify(&m, &pi).unwrap(), MarkClass::P0);
        let run = phi(&m, &pi).unwrap();
        assert_eq!(run.result, pd(&[(1, 1)]));
        assert_eq!(run.cover, Transposition::new(1, 2).unwrap());
        assert_eq!(run.aligned_steps(), 0);
        let t = Transposition::new(1, 2).unwrap();
        let f = fiber(&pd(&[(1, 1)]), &Permutation::identity(), t, &pi).unwrap();
        assert_eq!(f.counts(), (1, 0, 0));
        assert_eq!(f.zero, vec![m]);
    }

    #[test]
    fn preconditions() {
        let pi = digits("3421");
        assert!(matches!(
            classify(&marked(&[], (3, 2)), &pi),
            Err(Error::NotDominated(_))
        ));
        assert!(matches!(
            PhiContext::new(&digits("1432"), &digits("2431")),
            Err(Error::NotDominant(_))
        ));
        let m = marked(&[], (1, 1));
        assert!(!is_aligned(&m, 3, AlignKind::A, &pi).unwrap());
        assert!(matches!(
            phi_step(&m, 3, AlignKind::A, &pi),
            Err(Error::NotAligned { .. })
        ));
        assert!(sigma(&m, 2, AlignKind::A, &pi).unwrap().contains(&Pos::new(1, 1)));
    }

    #[test]
    fn delta_pairs_of_identity() {
        let pairs = delta_pairs(&Permutation::identity(), &digits("3421")).unwrap();
        assert_eq!(pairs.len(), 5);
        let pi = digits("3421");
        assert!(delta_pairs(&pi, &pi).unwrap().is_empty());
    }

    #[test]
    fn statistic_sets() {
        let t34 = Transposition::new(3, 4).unwrap();
        let sets = ab_sets(&digits("2136754"), t34, &digits("7654321")).unwrap();
        assert_eq!(sets.a, BTreeSet::from([5, 6, 7]));
        let t14 = Transposition::new(1, 4).unwrap();
        let sets = ab_sets(&digits("2165743"), t14, &digits("6573421")).unwrap();
        assert_eq!(sets.b, BTreeSet::from([5, 7]));
        let t12 = Transposition::new(1, 2).unwrap();
        assert_eq!(
            ab_sets(&Permutation::identity(), t12, &digits("21")).unwrap(),
            StatisticSets::default()
        );
        assert!(matches!(
            ab_sets(&Permutation::identity(), Transposition::new(1, 3).unwrap(), &digits("321")),
            Err(Error::NotACover { .. })
        ));
    }

    #[test]
    fn trace_json() {
        let run = phi(&marked(&[], (1, 1)), &digits("21")).unwrap();
        assert_eq!(
            serde_json::to_string(&run).unwrap(),
            r#"{"kind":"0","k":0,"cover":[1,2],"steps":[{"crosses":[],"mark":[1,1]}],"result":{"crosses":[[1,1]]}}"#
        );
    }

    #[test]
    fn verifiers_on_small_cases() {
        let pi = digits("3421");
        assert!(verify_delta(&digits("1432"), &pi).unwrap().ok);
        assert!(verify_delta(&pi, &pi).unwrap().ok);
        assert!(verify_nabla(&Permutation::identity(), &pi).unwrap().ok);
        assert!(verify_nabla(&pi, &pi).unwrap().ok);
        let r = verify_delta(&Permutation::identity(), &pi).unwrap();
        assert!(r.ok);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["covers"][0]["t"], serde_json::json!([2, 3]));
    }
}
