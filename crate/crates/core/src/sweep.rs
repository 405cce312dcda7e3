//! Exhaustive checks over small ranks. Each sweep fans out over independent
//! cases, in parallel with the `parallel` feature and sequentially
//! otherwise.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::perm::{Partition, Permutation, Transposition};
use crate::phi::{verify_delta, verify_nabla, AlignKind, MarkClass, PhiContext};
use crate::pipedream::{dominated_positions, enumerate, enumerate_bruteforce};
use crate::poly::{v_lambda_basis, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Number of checks run and a description of each failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(parts: impl IntoIterator<Item = Summary>) -> Summary {
        parts.into_iter().fold(Summary::default(), |mut acc, s| {
            acc.checked += s.checked;
            acc.failures.extend(s.failures);
            acc
        })
    }

    fn record(&mut self, pass: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !pass {
            self.failures.push(what());
        }
    }

    fn record_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checks, {} failures", self.checked, self.failures.len())
    }
}

/// Every pair `(w, pi)` with `pi` dominant in `S_n` and `w <=_L pi`.
pub fn cases(n: usize) -> Vec<(Permutation, Permutation)> {
    Permutation::dominant_in(n)
        .into_iter()
        .flat_map(|pi| {
            pi.weak_interval_below()
                .into_iter()
                .map(move |w| (w, pi.clone()))
        })
        .collect()
}

/// Every cover `w -> t w` below a dominant `pi` in `S_n`.
pub fn covers(n: usize) -> Vec<(Permutation, Permutation, Transposition)> {
    cases(n)
        .into_iter()
        .flat_map(|(w, pi)| {
            let ts = w.covers_below(&pi).expect("cases are valid");
            ts.into_iter().map(move |t| (w.clone(), pi.clone(), t))
        })
        .collect()
}

/// The `Delta` identity for every case of rank `n`.
pub fn delta(n: usize, exec: Execution) -> Summary {
    Summary::merge(map(exec, &cases(n), |(w, pi)| {
        let mut s = Summary::default();
        if let Some(r) = s.record_result(verify_delta(w, pi), || format!("delta {w} {pi}")) {
            s.record(r.ok, || format!("delta {w} {pi}: {:?}", r.mismatches));
        }
        s
    }))
}

/// The `Nabla` identity for every case of rank `n`.
pub fn nabla(n: usize, exec: Execution) -> Summary {
    Summary::merge(map(exec, &cases(n), |(w, pi)| {
        let mut s = Summary::default();
        if let Some(r) = s.record_result(verify_nabla(w, pi), || format!("nabla {w} {pi}")) {
            s.record(r.ok, || format!("nabla {w} {pi}: {:?}", r.mismatches));
        }
        s
    }))
}

/// `[Delta, Nabla] = H`, `[H, Delta] = 2 Delta`, `[H, Nabla] = -2 Nabla` on
/// the monomial basis of `V_lambda` for every `|lambda| <= max_size`.
pub fn sl2(max_size: usize, exec: Execution) -> Summary {
    let monomials: Vec<_> = Partition::all_up_to(max_size)
        .iter()
        .flat_map(v_lambda_basis)
        .collect();
    Summary::merge(map(exec, &monomials, |m| {
        let mut s = Summary::default();
        let f = Polynomial::from(m.clone());
        s.record(f.delta_nabla_commutator() == f.h(), || format!("[D,N] = H at {m}"));
        let hd = &f.delta().h() - &f.h().delta();
        s.record(hd == f.delta().scale(2), || format!("[H,D] = 2D at {m}"));
        let hn = &f.nabla().h() - &f.h().nabla();
        s.record(hn == f.nabla().scale(-2), || format!("[H,N] = -2N at {m}"));
        s
    }))
}

/// Ladder enumeration against brute force for every `w` in `S_n`.
pub fn enumeration(n: usize, exec: Execution) -> Summary {
    Summary::merge(map(exec, &Permutation::all(n), |w| {
        let mut s = Summary::default();
        let fast: BTreeSet<_> = enumerate(w).into_iter().collect();
        if let Some(slow) = s.record_result(enumerate_bruteforce(w), || format!("brute force {w}")) {
            let slow: BTreeSet<_> = slow.into_iter().collect();
            s.record(fast == slow, || {
                format!("enumerate {w}: {} vs {} pipe dreams", fast.len(), slow.len())
            });
        }
        s
    }))
}

/// Row counts of dominated sets equal `code(pi)` and contain every cross.
pub fn dominated(n: usize, exec: Execution) -> Summary {
    Summary::merge(map(exec, &cases(n), |(w, pi)| {
        let mut s = Summary::default();
        let lambda = pi.code();
        for pd in enumerate(w) {
            let Some(d) = s.record_result(dominated_positions(&pd, pi), || format!("{pd} under {pi}")) else {
                continue;
            };
            s.record(d.row_counts(lambda.len()) == lambda, || {
                format!("row counts of {pd} under {pi}")
            });
            s.record(pd.crosses().iter().all(|&p| d.contains(p)), || {
                format!("crosses of {pd} not dominated under {pi}")
            });
            let rows = d.positions.iter().map(|p| p.i).max().unwrap_or(0);
            s.record(rows <= lambda.len(), || format!("{pd}: dominated row {rows}"));
        }
        s
    }))
}

/// Weight preservation and the chain properties of every `Phi` run over
/// `DeltaPD(w)`, for every case of rank `n`.
pub fn phi_runs(n: usize, exec: Execution) -> Summary {
    Summary::merge(map(exec, &cases(n), |(w, pi)| {
        let mut s = Summary::default();
        if let Err(e) = check_phi_runs(w, pi, &mut s) {
            s.record(false, || format!("phi runs {w} {pi}: {e}"));
        }
        s
    }))
}

fn check_phi_runs(w: &Permutation, pi: &Permutation, s: &mut Summary) -> Result<()> {
    let ctx = PhiContext::new(w, pi)?;
    for mpd in ctx.delta_pairs()? {
        let run = ctx.phi(&mpd)?;
        let tag = || format!("{} at {} ({w} {pi})", mpd.pd, mpd.mark);
        s.record(
            ctx.marked_weight(&mpd)? == ctx.result_weight(&run.result)?,
            || format!("weight {}", tag()),
        );
        let kind = match run.kind {
            MarkClass::P0 => continue,
            MarkClass::PA => AlignKind::A,
            MarkClass::PB => AlignKind::B,
        };
        let k = run.k;
        for pair in run.steps.windows(2) {
            let (before, after) = (&pair[0], &pair[1]);
            s.record(
                after.labels().w <= before.labels().w && after.labels().s != k,
                || format!("labels along chain {}", tag()),
            );
            let (sb, sa) = (ctx.sigma(before, k, kind), ctx.sigma(after, k, kind));
            s.record(sa.is_subset(&sb) && sa.len() < sb.len(), || {
                format!("sigma not shrinking {}", tag())
            });
        }
        let (last_aligned, terminal) = (&run.steps[..run.steps.len() - 1], run.last());
        s.record(
            last_aligned.iter().all(|m| ctx.is_aligned(m, k, kind))
                && !ctx.is_aligned(terminal, k, kind)
                && ctx.classify(terminal)? == MarkClass::P0,
            || format!("chain alignment {}", tag()),
        );
        let sets = ctx.ab_sets(run.cover)?;
        let home = match kind {
            AlignKind::A => &sets.a,
            AlignKind::B => &sets.b,
        };
        s.record(home.contains(&k), || format!("k = {k} outside its set {}", tag()));
    }
    Ok(())
}

/// The fiber law for one cover: for every `Q` in `PD(t w)` the forward
/// fiber has class sizes `(1, |A|, |B|)` and equals the backward fiber.
pub fn fiber_cover(w: &Permutation, pi: &Permutation, t: Transposition) -> Summary {
    let mut s = Summary::default();
    if let Err(e) = check_fiber_cover(w, pi, t, &mut s) {
        s.record(false, || format!("fibers {w} {pi} {t}: {e}"));
    }
    s
}

fn check_fiber_cover(w: &Permutation, pi: &Permutation, t: Transposition, s: &mut Summary) -> Result<()> {
    let ctx = PhiContext::new(w, pi)?;
    let forward = ctx.forward_fibers()?;
    let sets = ctx.ab_sets(t)?;
    for q in enumerate(&t.left_mul(w)) {
        let fwd = forward.get(&q).cloned().unwrap_or_default();
        s.record(fwd.counts() == (1, sets.a.len(), sets.b.len()), || {
            format!("fiber of {q} ({w} {pi} {t}) has sizes {:?}", fwd.counts())
        });
        let bwd = ctx.fiber_backward(&q, t)?;
        s.record(fwd == bwd, || format!("forward and backward fibers of {q} differ"));
    }
    Ok(())
}

/// The fiber law for every cover of rank `n`.
pub fn fibers(n: usize, exec: Execution) -> Summary {
    fibers_of(&covers(n), exec)
}

/// The fiber law for the given covers.
pub fn fibers_of(covers: &[(Permutation, Permutation, Transposition)], exec: Execution) -> Summary {
    Summary::merge(map(exec, covers, |(w, pi, t)| fiber_cover(w, pi, *t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_counts() {
        // Dominant permutations of S_3: 123, 213, 231, 312, 321.
        assert_eq!(Permutation::dominant_in(3).len(), 5);
        // Lower intervals: 1 + 2 + 3 + 3 + 6.
        assert_eq!(cases(3).len(), 15);
        assert!(covers(3).iter().all(|(w, pi, t)| t.left_mul(w).leq_weak(pi)));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert!(delta(3, exec).ok());
            assert!(nabla(3, exec).ok());
            assert!(phi_runs(3, exec).ok());
            assert!(fibers(3, exec).ok());
        }
        assert_eq!(
            dominated(4, Execution::Sequential),
            dominated(4, Execution::Parallel)
        );
    }

    #[test]
    fn failures_are_reported() {
        let mut s = Summary::default();
        s.record(true, || unreachable!());
        s.record(false, || "bad".into());
        assert_eq!(s.to_string(), "2 checks, 1 failures");
        assert!(!s.ok());
    }
}
