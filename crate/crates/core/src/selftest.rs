//! Invariant suites run by the `selftest` command.
//!
//! Each suite returns a [`SuiteResult`]; none of them panics on a violated
//! property. The identity suite takes the matrix bracket as a parameter so
//! that a deliberately broken bracket can be fed through it.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::almost_commuting::{group_act, sp_square, torus_limit, ACTuple};
use crate::current::Current;
use crate::error::Error;
use crate::lie::{ad_image, Family, LieAlg};
use crate::linalg::{rat, Matrix};
use crate::random::{int_coords, substream, Purpose};
use crate::width::{
    obstruction_campaign, single_bracket_solve, spanning_pair, star_seed, two_bracket_decompose,
    CampaignConfig, DEFAULT_SPANNING_ATTEMPTS, DEFAULT_STAR_ATTEMPTS,
};

pub type BracketFn = fn(&Matrix, &Matrix) -> Matrix;

pub fn commutator(x: &Matrix, y: &Matrix) -> Matrix {
    x.commutator(y)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct SelftestOptions {
    pub quick: bool,
    pub seed: u64,
}

/// `sl2, sl3, sl4, sp2, sp4`.
pub fn default_algebras() -> Vec<Arc<LieAlg>> {
    [
        (Family::Sl, 2),
        (Family::Sl, 3),
        (Family::Sl, 4),
        (Family::Sp, 1),
        (Family::Sp, 2),
    ]
    .into_iter()
    .map(|(f, n)| LieAlg::build(f, n).expect("default algebras are valid"))
    .collect()
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn finish(self, name: &str, start: Instant) -> SuiteResult {
        SuiteResult {
            name: name.to_string(),
            passed: self.failures.is_empty(),
            checks: self.checks,
            detail: if self.failures.is_empty() {
                "ok".to_string()
            } else {
                self.failures.join("; ")
            },
            millis: start.elapsed().as_millis(),
        }
    }
}

/// Antisymmetry, Jacobi and Killing invariance on random triples, using
/// `bracket` for every bracket, plus nondegeneracy of the Killing form.
pub fn identity_suite(
    algebras: &[Arc<LieAlg>],
    samples: usize,
    seed: u64,
    bracket: BracketFn,
) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for g in algebras {
        let id = g.id();
        t.check(g.killing_gram().rank() == g.dim(), || {
            format!("{id}: degenerate Killing form")
        });
        for s in 0..samples {
            let mut rng = substream(seed, Purpose::Selftest, s as u64);
            let [x, y, z] = [0, 1, 2].map(|_| g.elem(int_coords(&mut rng, g.dim(), 5)));
            let (xm, ym, zm) = (x.matrix(), y.matrix(), z.matrix());
            let xy = bracket(xm, ym);
            t.check((&xy + &bracket(ym, xm)).is_zero(), || {
                format!("{id}: antisymmetry fails at sample {s}")
            });
            let jac = &(&bracket(xm, &bracket(ym, zm)) + &bracket(ym, &bracket(zm, xm)))
                + &bracket(zm, &xy);
            t.check(jac.is_zero(), || {
                format!("{id}: Jacobi fails at sample {s}")
            });
            let invariant = (|| -> Result<bool, Error> {
                let xy = g.elem_from_matrix(xy.clone())?;
                let xz = g.elem_from_matrix(bracket(xm, zm))?;
                Ok(xy.killing(&z)? + y.killing(&xz)? == rat(0))
            })();
            t.check(invariant == Ok(true), || {
                format!("{id}: Killing invariance fails at sample {s}")
            });
        }
    }
    t.finish("identities", start)
}

/// `rank [ad a | ad b] = dim ⟺ C(a) ∩ C(b) = 0`, and `im(ad a)^⊥ = C(a)`.
pub fn image_centralizer_suite(algebras: &[Arc<LieAlg>], samples: usize, seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for g in algebras {
        let id = g.id();
        for s in 0..samples {
            let mut rng = substream(seed, Purpose::Selftest, (1 << 20) + s as u64);
            // mix of generic and sparse draws so both verdicts show up
            let height = if s % 2 == 0 { 2 } else { 1 };
            let mut a = g.elem(int_coords(&mut rng, g.dim(), height));
            let b = g.elem(int_coords(&mut rng, g.dim(), height));
            if s % 4 == 1 {
                a = b.scale(&rat(2));
            }
            let full = a.image_sum_rank(&b).expect("same parent") == g.dim();
            let trivial = a.common_centralizer(&b).expect("same parent").is_zero();
            t.check(full == trivial, || {
                format!("{id}: rank/centralizer mismatch at {s}")
            });
            if !a.is_zero() {
                t.check(ad_image(&a).killing_orthogonal() == a.centralizer(), || {
                    format!("{id}: im(ad a)^⊥ != C(a) at {s}")
                });
            }
        }
    }
    t.finish("image-centralizer", start)
}

pub fn two_bracket_suite(
    algebras: &[Arc<LieAlg>],
    samples: usize,
    order: usize,
    seed: u64,
) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for g in algebras {
        let id = g.id();
        let pair = match spanning_pair(g, DEFAULT_SPANNING_ATTEMPTS, seed) {
            Ok(p) => p,
            Err(e) => {
                t.check(false, || format!("{id}: {e}"));
                continue;
            }
        };
        let w1 = Current::constant(pair.w1(), order);
        let w2 = Current::constant(pair.w2(), order);
        for s in 0..samples {
            let z = Current::random(g, order, 4, seed ^ (s as u64).wrapping_mul(0x9e37))
                .expect("valid parameters");
            let ok = two_bracket_decompose(&z, &pair)
                .and_then(|(x, y)| w1.cbracket(&x)?.add(&w2.cbracket(&y)?))
                .is_ok_and(|back| back == z);
            t.check(ok, || format!("{id}: re-expansion differs at sample {s}"));
        }
    }
    t.finish("two-bracket", start)
}

pub fn sl2_single_bracket_suite(samples: usize, order: usize, seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let g = LieAlg::build(Family::Sl, 2).expect("sl2");
    let mut drawn = 0;
    let mut k = 0u64;
    while drawn < samples {
        let z = Current::random(&g, order, 3, seed.wrapping_add(k)).expect("valid parameters");
        k += 1;
        if z.coeff(0).is_zero() {
            continue;
        }
        drawn += 1;
        let ok = single_bracket_solve(&z, DEFAULT_STAR_ATTEMPTS, seed)
            .and_then(|sol| sol.x.cbracket(&sol.y))
            .is_ok_and(|back| back == z);
        t.check(ok, || format!("sl2: single bracket fails for draw {k}"));
    }
    let (e, f, h) = (g.basis_elem(0), g.basis_elem(1), g.basis_elem(2));
    let half_h = h.scale(&crate::linalg::ratio(1, 2));
    t.check(half_h.bracket(&e).ok() == Some(e.clone()), || {
        "[h/2, e] != e".into()
    });
    t.check(e.bracket(&f).ok() == Some(h.clone()), || {
        "[e, f] != h".into()
    });
    t.check(
        half_h.common_centralizer(&e).is_ok_and(|c| c.is_zero()),
        || "C(h/2) ∩ C(e) != 0".into(),
    );
    t.check(e.common_centralizer(&f).is_ok_and(|c| c.is_zero()), || {
        "C(e) ∩ C(f) != 0".into()
    });
    t.finish("sl2-single-bracket", start)
}

/// Campaigns and seed searches at the minimal nilpotent of `sl3, sl4, sp4`.
///
/// Every accepted sample must generate a solvable subalgebra, and any seed
/// found must be an exact certificate. The observed centralizer dimensions
/// are reported in the detail line.
pub fn obstruction_suite(samples: usize, attempts: usize, seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut notes = Vec::new();
    for (f, n) in [(Family::Sl, 3), (Family::Sl, 4), (Family::Sp, 2)] {
        let g = LieAlg::build(f, n).expect("valid algebra");
        let id = g.id();
        let c = g.minimal_nilpotent().expect("sl/sp");
        let mut cfg = CampaignConfig::new(samples, 1, seed);
        cfg.workers = 4;
        match obstruction_campaign(&c, &cfg) {
            Ok(out) => {
                let r = out.report;
                t.check(r.samples_accepted == samples, || {
                    format!("{id}: only {} samples accepted", r.samples_accepted)
                });
                t.check(r.solvable_failures == 0, || {
                    format!("{id}: {} non-solvable samples", r.solvable_failures)
                });
                notes.push(format!(
                    "{id}: min dim {}, {}/{} zero",
                    r.min_common_centralizer_dim, r.zero_centralizer_samples, r.samples_accepted
                ));
            }
            Err(e) => t.check(false, || format!("{id}: {e}")),
        }
        match star_seed(&c, attempts, seed) {
            Ok(s) => t.check(
                s.a().bracket(s.b()).ok().as_ref() == Some(&c)
                    && s.a().common_centralizer(s.b()).is_ok_and(|k| k.is_zero()),
                || format!("{id}: seed certificate does not verify"),
            ),
            Err(Error::SeedNotFound { .. }) => notes.push(format!("{id}: no seed")),
            Err(e) => t.check(false, || format!("{id}: {e}")),
        }
    }
    let mut r = t.finish("obstruction", start);
    if r.passed {
        r.detail = notes.join("; ");
    }
    r
}

/// `z = E_13 + (random)·t` in `sl3`: any returned solution re-expands.
pub fn order_two_suite(samples: usize, seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let g = LieAlg::build(Family::Sl, 3).expect("sl3");
    let c = g.minimal_nilpotent().expect("sl3");
    let mut solved = 0;
    for s in 0..samples {
        let r = Current::random(&g, 2, 3, seed.wrapping_add(s as u64)).expect("valid parameters");
        let mut z = Current::constant(&c, 2);
        z.set_coeff(1, r.coeff(1).clone());
        match single_bracket_solve(&z, DEFAULT_STAR_ATTEMPTS, seed) {
            Ok(sol) => {
                solved += 1;
                t.check(sol.x.cbracket(&sol.y).is_ok_and(|b| b == z), || {
                    format!("sl3: order-2 sample {s} does not re-expand")
                });
            }
            Err(Error::SeedNotFound { .. }) => {}
            Err(e) => t.check(false, || format!("sl3: {e}")),
        }
    }
    let mut r = t.finish("order-two", start);
    if r.passed {
        r.detail = format!("{solved}/{samples} solved as single brackets");
    }
    r
}

/// Random unipotent products (type A) and symplectic generators (type C).
pub fn random_group_element(size: usize, symplectic: bool, rng: &mut impl rand::Rng) -> Matrix {
    let mut g = Matrix::identity(size);
    for _ in 0..4 {
        let step = if symplectic {
            let n = size / 2;
            let kind = rng.gen_range(0..3);
            let p = rng.gen_range(0..n);
            let q = rng.gen_range(0..n);
            let s = rat(rng.gen_range(-3..=3));
            let mut m = Matrix::identity(size);
            match kind {
                // [[I, S], [0, I]], S symmetric
                0 => {
                    m[(p, n + q)] += &s;
                    if p != q {
                        m[(q, n + p)] += &s;
                    }
                }
                // [[I, 0], [S, I]]
                1 => {
                    m[(n + p, q)] += &s;
                    if p != q {
                        m[(n + q, p)] += &s;
                    }
                }
                // [[U, 0], [0, U^{-T}]]
                _ => {
                    if p != q {
                        m[(p, q)] += &s;
                        m[(n + q, n + p)] -= &s;
                    }
                }
            }
            m
        } else {
            let p = rng.gen_range(0..size);
            let q = rng.gen_range(0..size);
            let mut m = Matrix::identity(size);
            if p != q {
                m[(p, q)] = rat(rng.gen_range(-3..=3));
            }
            m
        };
        g = &g * &step;
    }
    g
}

pub fn almost_commuting_suite(samples: usize, seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let sl2 = LieAlg::build(Family::Sl, 2).expect("sl2");
    let sp4 = LieAlg::build(Family::Sp, 2).expect("sp4");
    let v = |xs: &[i64]| xs.iter().map(|&x| rat(x)).collect::<Vec<_>>();
    let base_a = ACTuple::type_a(
        sl2.basis_elem(2),
        sl2.basis_elem(0),
        v(&[1, 0]),
        v(&[0, -2]),
    )
    .expect("valid tuple");
    t.check(base_a.is_member(), || {
        "sl2 example tuple is not a member".into()
    });
    let limit_ok = torus_limit(&base_a).is_ok_and(|lim| {
        lim.limit.is_some_and(|l| {
            l.x() == &sl2.basis_elem(2)
                && l.y().is_zero()
                && l.i().iter().all(|x| x == &rat(0))
                && l.j().is_some_and(|j| j.iter().all(|x| x == &rat(0)))
        })
    });
    t.check(limit_ok, || {
        "torus limit of the sl2 example is not (h, 0, 0, 0)".into()
    });

    for s in 0..samples {
        let mut rng = substream(seed, Purpose::Selftest, (2 << 20) + s as u64);
        let ga = random_group_element(2, false, &mut rng);
        t.check(group_act(&ga, &base_a).is_ok_and(|m| m.is_member()), || {
            format!("type A action breaks membership at {s}")
        });
        let i = int_coords(&mut rng, 4, 3);
        let sq = sp_square(&i, &sp4);
        t.check(
            sq.as_ref().is_ok_and(|e| {
                let w = sp4.omega().expect("sp");
                (&(&e.matrix().transpose() * w) + &(w * e.matrix())).is_zero()
            }),
            || format!("sp_square leaves sp4 at {s}"),
        );
        let tuple_c = type_c_member(&sp4, &mut rng);
        let gc = random_group_element(4, true, &mut rng);
        t.check(
            group_act(&gc, &tuple_c).is_ok_and(|m| m.is_member()),
            || format!("type C action breaks membership at {s}"),
        );
    }
    t.finish("almost-commuting", start)
}

/// A member `(x, y, i)` of the type C scheme: pick `x` in the Cartan and
/// `i` with a single nonzero entry `i_p`, then solve `[x, y] = -i²` for `y`
/// (possible whenever the relevant weight of `x` is nonzero).
pub fn type_c_member(g: &Arc<LieAlg>, rng: &mut impl rand::Rng) -> ACTuple {
    let size = g.matrix_size();
    let n = g.n();
    loop {
        let mut diag = vec![rat(0); size];
        for p in 0..n {
            let d = rat(rng.gen_range(-4..=4));
            diag[p] = d.clone();
            diag[n + p] = -d;
        }
        let x = g
            .elem_from_matrix(Matrix::diagonal(&diag))
            .expect("diagonal sp element");
        let mut i = vec![rat(0); size];
        i[rng.gen_range(0..size)] = rat(rng.gen_range(1..=3));
        let rhs = sp_square(&i, g).expect("sp").neg();
        if let Some(yc) = x.ad_matrix().solve_particular(rhs.coords()) {
            let y = g.elem(yc);
            let t = ACTuple::type_c(x, y, i).expect("valid tuple");
            if t.is_member() {
                return t;
            }
        }
    }
}

/// Repeating a campaign, and splitting it across workers, gives identical
/// reports.
pub fn determinism_suite(samples: usize, seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let g = LieAlg::build(Family::Sl, 3).expect("sl3");
    let c = g.minimal_nilpotent().expect("sl3");
    let cfg = CampaignConfig::new(samples, 1, seed);
    let render = |workers: usize| {
        let mut cfg = cfg.clone();
        cfg.workers = workers;
        obstruction_campaign(&c, &cfg)
            .map(|o| {
                serde_json::to_string(&o.report).expect("serializable")
                    + &serde_json::to_string(&o.log).expect("serializable")
            })
            .ok()
    };
    let first = render(1);
    t.check(first.is_some(), || "campaign failed".into());
    t.check(render(1) == first, || "repeated campaign differs".into());
    t.check(render(4) == first, || {
        "4-worker campaign differs from sequential".into()
    });
    t.finish("determinism", start)
}

pub fn run_selftest(opts: SelftestOptions) -> Vec<SuiteResult> {
    let algebras = default_algebras();
    let (triples, pairs, currents, sl2_currents, campaign, order2, ac, det) = if opts.quick {
        (20, 20, 5, 10, 20, 3, 10, 10)
    } else {
        (200, 200, 50, 100, 500, 10, 100, 50)
    };
    vec![
        identity_suite(&algebras, triples, opts.seed, commutator),
        image_centralizer_suite(&algebras, pairs, opts.seed),
        two_bracket_suite(&algebras, currents, 6, opts.seed),
        sl2_single_bracket_suite(sl2_currents, 8, opts.seed),
        obstruction_suite(campaign, 256, opts.seed),
        order_two_suite(order2, opts.seed),
        almost_commuting_suite(ac, opts.seed),
        determinism_suite(det, opts.seed),
    ]
}
