//! The exhaustive property suite: each function checks one property over
//! every space in its range and returns a report instead of panicking, so
//! the same code backs the acceptance tests and `topogame check`.

use crate::dualities::{transduce, Construction};
use crate::families::{
    enumerate_dense_families, enumerate_maximal_cellular, enumerate_opens,
    maximal_disjoint_refinement, OpenLattice,
};
use crate::game::{
    solve, verify_winning, GameKind, GreedyCellularity, Player, SolveOptions, SolvedGame, Strategy,
    Transcript, Verdict,
};
use crate::invariants::{self, InvariantReport};
use crate::oracle;
use crate::points::PointSet;
use crate::space::FiniteSpace;
use crate::spacegen::{labeled_preorders, space_id};
use crate::Result;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    /// Machine-readable description of up to ten failing instances.
    pub failures: Vec<String>,
}

const MAX_LISTED: usize = 10;

struct Tally {
    checked: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_LISTED {
                self.failures.push(f);
            }
        }
        self
    }
}

fn report(
    id: &'static str,
    title: &'static str,
    start: Instant,
    budget: Option<Duration>,
    tally: Tally,
    summary: String,
) -> CriterionReport {
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let mut detail = format!(
        "{summary}; {} checks, {} failed",
        tally.checked, tally.failed
    );
    if let Some(b) = budget {
        detail.push_str(&format!(
            "; {:.1}s of a {}s budget",
            elapsed.as_secs_f64(),
            b.as_secs()
        ));
    }
    CriterionReport {
        id,
        title,
        passed: tally.failed == 0 && in_time,
        detail,
        elapsed_ms: elapsed.as_millis(),
        failures: tally.failures,
    }
}

/// Every labeled space with `1..=max_n` points.
pub fn spaces_up_to(max_n: usize) -> Vec<FiniteSpace> {
    (1..=max_n)
        .flat_map(|n| labeled_preorders(n).expect("n within the enumeration range"))
        .collect()
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|item| {
            let mut t = Tally::new();
            f(item, &mut t);
            t
        })
        .reduce(Tally::new, Tally::merge)
}

fn error_note(space: &FiniteSpace, what: &str, e: &crate::Error) -> String {
    format!("{} {what}: error {e}", space_id(space))
}

/// Labeled topology counts from the incremental enumerator against the
/// relation-pattern filter, and optionally the 6-point count against the
/// poset decomposition.
pub fn enumeration(stretch: bool) -> CriterionReport {
    const EXPECTED: [u64; 6] = [1, 4, 29, 355, 6942, 209527];
    let start = Instant::now();
    let mut tally = Tally::new();
    let mut counts = Vec::new();
    for n in 1..=5 {
        let incremental = labeled_preorders(n).map(|v| v.len() as u64).unwrap_or(0);
        let filtered = oracle::count_preorders_by_filter(n);
        counts.push(incremental);
        tally.record(
            incremental == filtered && incremental == EXPECTED[n - 1],
            || {
                format!(
                    "n={n}: incremental {incremental}, filter {filtered}, expected {}",
                    EXPECTED[n - 1]
                )
            },
        );
    }
    let core_elapsed = start.elapsed();
    let mut in_time = core_elapsed <= Duration::from_secs(60);
    let mut summary = format!(
        "labeled counts n=1..5: {counts:?} in {:.1}s (budget 60s)",
        core_elapsed.as_secs_f64()
    );
    if stretch {
        let t6 = Instant::now();
        let incremental = labeled_preorders(6).map(|v| v.len() as u64).unwrap_or(0);
        let via_posets = oracle::count_preorders_by_posets(6);
        tally.record(
            incremental == via_posets && incremental == EXPECTED[5],
            || {
                format!(
                    "n=6: incremental {incremental}, posets {via_posets}, expected {}",
                    EXPECTED[5]
                )
            },
        );
        let stretch_elapsed = t6.elapsed();
        in_time &= stretch_elapsed <= Duration::from_secs(600);
        summary.push_str(&format!(
            "; n=6: {incremental} in {:.1}s (budget 600s)",
            stretch_elapsed.as_secs_f64()
        ));
    }
    let mut r = report(
        "enumeration",
        "labeled topology counts agree across two enumerators",
        start,
        None,
        tally,
        summary,
    );
    r.passed &= in_time;
    r
}

/// Winners of the five games at every horizon up to `max_h`.
pub struct WinnerTable {
    pub horizons: usize,
    winners: Vec<(GameKind, Vec<Player>)>,
}

impl WinnerTable {
    pub fn new(
        space: &FiniteSpace,
        kinds: &[GameKind],
        max_h: usize,
        options: SolveOptions,
    ) -> Result<Self> {
        let winners = kinds
            .iter()
            .map(|&k| {
                let g = SolvedGame::new(space, k, max_h, options)?;
                let w = (1..=max_h)
                    .map(|h| g.winner(h))
                    .collect::<Result<Vec<_>>>()?;
                Ok((k, w))
            })
            .collect::<Result<_>>()?;
        Ok(WinnerTable {
            horizons: max_h,
            winners,
        })
    }

    pub fn winner(&self, kind: GameKind, h: usize) -> Player {
        self.winners
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, w)| w[h - 1])
            .expect("kind was tabulated")
    }

    /// Least horizon at which `player` wins `kind`.
    pub fn horizon(&self, kind: GameKind, player: Player) -> Option<usize> {
        (1..=self.horizons).find(|&h| self.winner(kind, h) == player)
    }
}

const DUALITIES: [(GameKind, Player, GameKind, Player, &str); 5] = [
    (
        GameKind::SelODOD,
        Player::Two,
        GameKind::OpenOpen,
        Player::One,
        "two sel-od-od <=> one oo",
    ),
    (
        GameKind::SelODOD,
        Player::One,
        GameKind::OpenOpen,
        Player::Two,
        "one sel-od-od <=> two oo",
    ),
    (
        GameKind::SelCOD,
        Player::Two,
        GameKind::SelODOD,
        Player::Two,
        "two sel-c-od <=> two sel-od-od",
    ),
    (
        GameKind::SelCOD,
        Player::One,
        GameKind::SelODOD,
        Player::One,
        "one sel-c-od <=> one sel-od-od",
    ),
    (
        GameKind::SelOOD,
        Player::Two,
        GameKind::PointOpen,
        Player::One,
        "two sel-o-od <=> one po",
    ),
];

/// The five solver-level winner biconditionals on every 4-point space.
pub fn winner_dualities() -> CriterionReport {
    let start = Instant::now();
    let spaces = labeled_preorders(4).expect("4 points is in range");
    let tally = par_tally(&spaces, |space, t| {
        match WinnerTable::new(space, &GameKind::ALL_UNCAPPED, 4, SolveOptions::default()) {
            Ok(table) => {
                for h in 1..=4 {
                    for (ka, pa, kb, pb, name) in DUALITIES {
                        let lhs = table.winner(ka, h) == pa;
                        let rhs = table.winner(kb, h) == pb;
                        t.record(lhs == rhs, || {
                            format!("{} h={h}: {name} fails ({lhs} vs {rhs})", space_id(space))
                        });
                    }
                }
            }
            Err(e) => t.record(false, || error_note(space, "solve", &e)),
        }
    });
    let summary = format!("{} spaces, h=1..4", spaces.len());
    report(
        "winner-duality",
        "solver winners satisfy the five game dualities",
        start,
        Some(Duration::from_secs(15 * 60)),
        tally,
        summary,
    )
}

/// The result of running one transduction on one space and horizon.
#[derive(Clone, Debug, Serialize)]
pub struct TransductionOutcome {
    pub space_id: String,
    pub construction: Construction,
    pub horizon: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Transcript>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Applies every transduction whose source player wins (per the solver) on
/// `space` at horizons `1..=max_h`, and referees each result.
pub fn run_transductions(
    space: &FiniteSpace,
    constructions: &[Construction],
    max_h: usize,
) -> Vec<TransductionOutcome> {
    let mut out = Vec::new();
    for h in 1..=max_h {
        for &c in constructions {
            let (kind, player) = c.source();
            let outcome = |verified, counterexample, error| TransductionOutcome {
                space_id: space_id(space),
                construction: c,
                horizon: h,
                verified,
                counterexample,
                error,
            };
            let source = match solve(space, kind, h) {
                Ok(sol) if sol.winner == player => sol.strategy,
                Ok(_) => continue,
                Err(e) => {
                    out.push(outcome(false, None, Some(e.to_string())));
                    continue;
                }
            };
            let result = transduce(space, c, Arc::new(source) as Arc<dyn Strategy>, h)
                .and_then(|t| verify_winning(space, t.kind(), h, &t));
            out.push(match result {
                Ok(Verdict::Winning) => outcome(true, None, None),
                Ok(Verdict::Counterexample { transcript }) => {
                    outcome(false, Some(transcript), None)
                }
                Err(e) => outcome(false, None, Some(e.to_string())),
            });
        }
    }
    out
}

/// All seven transductions over the 3-point spaces.
pub fn transducer_suite() -> CriterionReport {
    let start = Instant::now();
    let spaces = labeled_preorders(3).expect("3 points is in range");
    let outcomes: Vec<TransductionOutcome> = spaces
        .par_iter()
        .flat_map_iter(|s| run_transductions(s, &Construction::SEVEN, 3))
        .collect();
    let mut tally = Tally::new();
    for o in &outcomes {
        tally.record(o.verified, || {
            format!(
                "{} {} h={}: {}",
                o.space_id,
                o.construction,
                o.horizon,
                o.error.clone().unwrap_or_else(|| "counterexample".into())
            )
        });
    }
    let summary = format!(
        "{} spaces, h=1..3, {} applicable triples",
        spaces.len(),
        outcomes.len()
    );
    report(
        "transducers",
        "every transduced strategy wins where its source wins",
        start,
        Some(Duration::from_secs(10 * 60)),
        tally,
        summary,
    )
}

/// The greedy strategy wins each cover-type selection game within the
/// cellularity.
pub fn greedy_bound() -> CriterionReport {
    let start = Instant::now();
    let spaces = spaces_up_to(4);
    let tally = par_tally(&spaces, |space, t| {
        let c = invariants::cellularity(space);
        for kind in [GameKind::SelOOD, GameKind::SelCOD, GameKind::SelODOD] {
            let verdict = GreedyCellularity::new(space, kind)
                .and_then(|g| verify_winning(space, kind, c, &g));
            t.record(matches!(verdict, Ok(Verdict::Winning)), || {
                format!("{} {kind} h={c}: {verdict:?}", space_id(space))
            });
        }
    });
    let summary = format!("{} spaces with n <= 4", spaces.len());
    report(
        "greedy-bound",
        "greedy strategy wins the selection games within cellularity innings",
        start,
        None,
        tally,
        summary,
    )
}

/// Minimal winning horizons of the five games on one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizonProfile {
    pub invariants: InvariantReport,
    pub max_h: usize,
    pub h_two_sel_o_od: Option<usize>,
    pub h_two_sel_c_od: Option<usize>,
    pub h_two_sel_od_od: Option<usize>,
    pub h_one_open_open: Option<usize>,
    pub h_one_point_open: Option<usize>,
}

impl HorizonProfile {
    pub fn compute(space: &FiniteSpace, max_h: usize, options: SolveOptions) -> Result<Self> {
        let table = WinnerTable::new(space, &GameKind::ALL_UNCAPPED, max_h, options)?;
        Ok(HorizonProfile {
            invariants: InvariantReport::compute(space),
            max_h,
            h_two_sel_o_od: table.horizon(GameKind::SelOOD, Player::Two),
            h_two_sel_c_od: table.horizon(GameKind::SelCOD, Player::Two),
            h_two_sel_od_od: table.horizon(GameKind::SelODOD, Player::Two),
            h_one_open_open: table.horizon(GameKind::OpenOpen, Player::One),
            h_one_point_open: table.horizon(GameKind::PointOpen, Player::One),
        })
    }

    pub const LEGS: [&'static str; 5] = [
        "h_two_SelOOD = wl_degree",
        "h_one_OpenOpen = wl_degree",
        "h_one_PointOpen = wl_degree",
        "h_two_SelCOD = h_two_SelODOD",
        "h_two_SelODOD <= cellularity",
    ];

    /// The identities the census asserts, as `(description, holds)`, in
    /// [`Self::LEGS`] order.
    pub fn assertions(&self) -> Vec<(&'static str, bool)> {
        let wl = Some(self.invariants.wl_degree);
        let c = self.invariants.cellularity;
        let holds = [
            self.h_two_sel_o_od == wl,
            self.h_one_open_open == wl,
            self.h_one_point_open == wl,
            self.h_two_sel_c_od == self.h_two_sel_od_od,
            self.h_two_sel_od_od.is_some_and(|h| h <= c),
        ];
        Self::LEGS.into_iter().zip(holds).collect()
    }
}

/// Minimal horizons against the weak Lindelöf degree and cellularity, as
/// stated: `h_two(sel-o-od) = h_one(oo) = h_one(po) = wL` and
/// `h_two(sel-c-od) = h_two(sel-od-od) <= c`.
///
/// The open-open leg does not hold on finite spaces. In the fan with two top
/// points every cover contains the whole space, so `wL = 1`, but two can
/// answer any open set of one with a single top point and so survives the
/// first inning: `h_one(oo) = 2`. The report therefore also counts how often
/// `h_one(oo) = h_two(sel-od-od) = c` holds, which is what the game duality
/// and the greedy bound together predict.
pub fn horizon_collapse() -> CriterionReport {
    let start = Instant::now();
    let spaces = spaces_up_to(4);
    use std::sync::atomic::{AtomicUsize, Ordering};
    let corrected = AtomicUsize::new(0);
    let per_leg: [AtomicUsize; 5] = Default::default();
    let tally = par_tally(&spaces, |space, t| {
        match HorizonProfile::compute(space, space.n(), SolveOptions::default()) {
            Ok(p) => {
                for (leg, (what, ok)) in p.assertions().into_iter().enumerate() {
                    if !ok {
                        per_leg[leg].fetch_add(1, Ordering::Relaxed);
                    }
                    t.record(ok, || {
                        format!(
                            "{}: {what} fails (wl={}, c={}, h_two_SelOOD={:?}, h_one_OpenOpen={:?}, \
                             h_one_PointOpen={:?}, h_two_SelCOD={:?}, h_two_SelODOD={:?})",
                            space_id(space),
                            p.invariants.wl_degree,
                            p.invariants.cellularity,
                            p.h_two_sel_o_od,
                            p.h_one_open_open,
                            p.h_one_point_open,
                            p.h_two_sel_c_od,
                            p.h_two_sel_od_od
                        )
                    });
                }
                let c = Some(p.invariants.cellularity);
                if p.h_one_open_open == c && p.h_two_sel_od_od == c {
                    corrected.fetch_add(1, Ordering::Relaxed);
                }
            }
            Err(e) => t.record(false, || error_note(space, "solve", &e)),
        }
    });
    let legs = HorizonProfile::LEGS
        .iter()
        .zip(&per_leg)
        .map(|(what, count)| format!("{what}: {} failing", count.load(Ordering::Relaxed)))
        .collect::<Vec<_>>()
        .join(", ");
    let summary = format!(
        "{} spaces with n <= 4; {legs}; h_one(oo) = h_two(sel-od-od) = cellularity on {} of them",
        spaces.len(),
        corrected.into_inner()
    );
    report(
        "horizon-collapse",
        "minimal horizons equal the weak Lindelof degree",
        start,
        None,
        tally,
        summary,
    )
}

/// Structural fast paths against brute force, and solving with reduced move
/// sets against full move sets.
pub fn fast_path_agreement() -> CriterionReport {
    let start = Instant::now();
    let spaces = spaces_up_to(4);
    let invariants = par_tally(&spaces, |space, t| {
        let id = || space_id(space);
        let fast = InvariantReport::compute(space);
        t.record(fast.pi_weight == oracle::pi_weight(space), || {
            format!("{} pi_weight", id())
        });
        t.record(fast.wl_degree == oracle::wl_degree(space), || {
            format!("{} wl_degree", id())
        });
        t.record(fast.cellularity == oracle::cellularity(space), || {
            format!("{} cellularity", id())
        });
        t.record(fast.density == oracle::density(space), || {
            format!("{} density", id())
        });
        for x in 0..space.n() {
            t.record(
                fast.pi_character[x] == oracle::pi_character(space, x),
                || format!("{} pi_character({x})", id()),
            );
        }
    });
    let small: Vec<FiniteSpace> = spaces.iter().filter(|s| s.n() <= 3).cloned().collect();
    let kinds: Vec<GameKind> = GameKind::ALL_UNCAPPED
        .into_iter()
        .chain((1..=3).map(|cap| GameKind::SelFinOOD { cap }))
        .collect();
    let modes = par_tally(&small, |space, t| {
        for &kind in &kinds {
            let full = SolvedGame::new(space, kind, 3, SolveOptions::default());
            let reduced = SolvedGame::new(space, kind, 3, SolveOptions::reduced());
            let (full, reduced) = match (full, reduced) {
                (Ok(f), Ok(r)) => (f, r),
                (Err(e), _) | (_, Err(e)) => {
                    t.record(false, || error_note(space, "solve", &e));
                    continue;
                }
            };
            for h in 1..=3 {
                let (a, b) = (full.winner(h).ok(), reduced.winner(h).ok());
                t.record(a.is_some() && a == b, || {
                    format!(
                        "{} {kind} h={h}: full {a:?}, reduced {b:?}",
                        space_id(space)
                    )
                });
            }
        }
    });
    report(
        "fast-path",
        "fast paths and reduced move sets agree with brute force",
        start,
        None,
        invariants.merge(modes),
        format!(
            "{} spaces for invariants, {} for move-set modes",
            spaces.len(),
            small.len()
        ),
    )
}

/// Closure algebra, open-set enumeration, cellular families, refinement,
/// the G-delta modification, regularity and products.
pub fn kernel_algebra() -> CriterionReport {
    let start = Instant::now();
    let spaces = spaces_up_to(4);
    let mut tally = par_tally(&spaces, |space, t| {
        let id = space_id(space);
        let n = space.n();
        let full = space.points();
        let subsets: Vec<PointSet> = (0u32..1 << n).map(PointSet::from_bits).collect();
        let mut algebra_ok = true;
        for &a in &subsets {
            let ca = space.closure(a);
            algebra_ok &= space.closure(ca) == ca && a.is_subset(ca);
            algebra_ok &= space.interior(a) == space.closure(a.complement(n)).complement(n);
            algebra_ok &= space.interior(space.interior(a)) == space.interior(a);
            algebra_ok &= space.is_open(a) == (space.interior(a) == a);
            algebra_ok &= space.is_dense(a) == (ca == full);
            for &b in &subsets {
                algebra_ok &= space.closure(a | b) == (ca | space.closure(b));
                if a.is_subset(b) {
                    algebra_ok &= ca.is_subset(space.closure(b));
                }
            }
        }
        t.record(algebra_ok, || format!("{id}: closure/interior algebra"));

        let opens = enumerate_opens(space);
        let mut sorted = opens.clone();
        sorted.sort_by_key(|s| s.bits());
        t.record(sorted == oracle::opens_by_subset_test(space), || {
            format!("{id}: up-sets")
        });
        t.record(sorted == oracle::opens_by_lattice_closure(space), || {
            format!("{id}: lattice closure of minimal neighbourhoods")
        });
        t.record(
            FiniteSpace::from_opens(n, &opens).is_ok_and(|s| s == *space),
            || format!("{id}: opens round trip"),
        );

        match enumerate_maximal_cellular(space) {
            Ok(cellular) => {
                t.record(cellular.iter().all(|f| space.is_dense(f.union())), || {
                    format!("{id}: a maximal cellular family is not dense")
                });
                let mut ours: Vec<Vec<PointSet>> =
                    cellular.iter().map(|f| f.members().to_vec()).collect();
                let mut theirs = oracle::maximal_cellular_families(space);
                for f in ours.iter_mut().chain(theirs.iter_mut()) {
                    f.sort_by_key(|s| s.bits());
                }
                ours.sort();
                theirs.sort();
                t.record(ours == theirs, || {
                    format!("{id}: maximal cellular families")
                });
            }
            Err(e) => t.record(false, || error_note(space, "cellular families", &e)),
        }

        let lattice = OpenLattice::new(space);
        let families = if n <= 3 {
            enumerate_dense_families(space).unwrap_or_default()
        } else {
            vec![lattice.nonempty().iter().copied().collect()]
        };
        let nonempty = lattice.nonempty();
        let refinements_ok = families
            .iter()
            .all(|f| match maximal_disjoint_refinement(space, f) {
                Ok(r) => {
                    let members = r.family().members();
                    let union = r.family().union();
                    r.family().is_cellular()
                        && nonempty.iter().all(|u| u.intersects(union))
                        && members.iter().all(|m| {
                            r.witness_of(*m)
                                .is_some_and(|w| f.contains(w) && m.is_subset(w))
                        })
                }
                Err(_) => false,
            });
        t.record(refinements_ok, || {
            format!("{id}: maximal disjoint refinement")
        });

        t.record(space.delta_space() == *space, || {
            format!("{id}: delta space")
        });
        let regular = space.is_regular();
        t.record(
            regular == oracle::is_symmetric(space) && regular == oracle::is_regular(space),
            || format!("{id}: regular iff symmetric"),
        );
    });

    let tiny = spaces_up_to(2);
    for s in &tiny {
        for t in &tiny {
            let ok = s.product(t).is_ok_and(|p| {
                let mut opens = enumerate_opens(&p);
                opens.sort_by_key(|x| x.bits());
                opens == oracle::product_opens(s, t)
            });
            tally.record(ok, || format!("product {} x {}", space_id(s), space_id(t)));
        }
    }
    report(
        "kernel-algebra",
        "kernel algebra holds exhaustively",
        start,
        None,
        tally,
        format!(
            "{} spaces with n <= 4, {} products",
            spaces.len(),
            tiny.len() * tiny.len()
        ),
    )
}

/// Every criterion in order.
pub fn run_all(stretch: bool) -> Vec<CriterionReport> {
    vec![
        enumeration(stretch),
        winner_dualities(),
        transducer_suite(),
        greedy_bound(),
        horizon_collapse(),
        fast_path_agreement(),
        kernel_algebra(),
    ]
}
