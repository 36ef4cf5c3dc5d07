//! Bracket decompositions of currents and the searches behind them.
//!
//! * [`spanning_pair`] finds `(w1, w2)` with `g = [w1, g] + [w2, g]`,
//!   certified by an exact rank computation.
//! * [`two_bracket_decompose`] writes any current as `[w1, X] + [w2, Y]`.
//! * [`star_seed`] looks for `c = [a, b]` with `C(a) ∩ C(b) = 0`.
//! * [`single_bracket_solve`] lifts such a seed degree by degree to a single
//!   bracket `z = [x, y]`.
//! * [`obstruction_campaign`] samples solutions of `[a, b] = c` and records
//!   their common centralizers and whether `a, b` generate a solvable
//!   subalgebra.
//!
//! Searches are randomized but every positive answer carries an exact
//! certificate. A search that comes back empty is inconclusive over Q.

use std::sync::Arc;
use std::thread;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::current::Current;
use crate::error::{Error, Result};
use crate::json::{self, ElemJson};
use crate::lie::{Elem, Family, LieAlg};
use crate::linalg::{ratio, zero_vector, Matrix, Rational, Vector};
use crate::random::{int_coords, substream, Purpose};

pub const DEFAULT_STAR_ATTEMPTS: usize = 64;
pub const DEFAULT_SPANNING_ATTEMPTS: usize = 16;

/// Coordinate bound for the random candidates drawn by the searches.
const SEARCH_HEIGHT: u32 = 3;

/// Campaigns give up after `samples * DRAW_BUDGET_FACTOR` draws.
pub const DRAW_BUDGET_FACTOR: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSource {
    Principal,
    Random { attempt: usize },
}

/// `(w1, w2)` with `rank [ad w1 | ad w2] = dim g`.
#[derive(Clone, Debug)]
pub struct SpanningPair {
    w1: Elem,
    w2: Elem,
    certificate_rank: usize,
    source: PairSource,
}

impl SpanningPair {
    /// Checks the rank certificate; `None` if `w1, w2` do not span.
    pub fn certify(w1: Elem, w2: Elem, source: PairSource) -> Result<Option<SpanningPair>> {
        let rank = w1.image_sum_rank(&w2)?;
        Ok((rank == w1.parent().dim()).then_some(SpanningPair {
            w1,
            w2,
            certificate_rank: rank,
            source,
        }))
    }

    pub fn w1(&self) -> &Elem {
        &self.w1
    }

    pub fn w2(&self) -> &Elem {
        &self.w2
    }

    pub fn certificate_rank(&self) -> usize {
        self.certificate_rank
    }

    pub fn source(&self) -> &PairSource {
        &self.source
    }
}

/// Principal nilpotent pair `(e, f)`: `Σ E_{i,i+1}, Σ E_{i+1,i}` in `sl_n`,
/// and the matching pair in `sp_2n` (which adds the long root vectors).
pub fn principal_pair(g: &Arc<LieAlg>) -> Option<(Elem, Elem)> {
    let size = g.matrix_size();
    let mut e = Matrix::zeros(size, size);
    let mut f = Matrix::zeros(size, size);
    match g.family() {
        Family::Sl => {
            for i in 0..size - 1 {
                e[(i, i + 1)] = Rational::one();
                f[(i + 1, i)] = Rational::one();
            }
        }
        Family::Sp => {
            let n = g.n();
            for i in 0..n - 1 {
                e[(i, i + 1)] = Rational::one();
                e[(n + i + 1, n + i)] = -Rational::one();
                f[(i + 1, i)] = Rational::one();
                f[(n + i, n + i + 1)] = -Rational::one();
            }
            e[(n - 1, 2 * n - 1)] = Rational::one();
            f[(2 * n - 1, n - 1)] = Rational::one();
        }
        Family::So => return None,
    }
    let e = g
        .elem_from_matrix(e)
        .expect("principal e lies in the algebra");
    let f = g
        .elem_from_matrix(f)
        .expect("principal f lies in the algebra");
    Some((e, f))
}

/// Finds a certified spanning pair: the principal pair when it certifies,
/// otherwise up to `attempts` seeded random pairs.
pub fn spanning_pair(g: &Arc<LieAlg>, attempts: usize, seed: u64) -> Result<SpanningPair> {
    if attempts == 0 {
        return Err(Error::ParameterOutOfRange(
            "attempts must be at least 1".into(),
        ));
    }
    if let Some((e, f)) = principal_pair(g) {
        if let Some(pair) = SpanningPair::certify(e, f, PairSource::Principal)? {
            return Ok(pair);
        }
    }
    for attempt in 0..attempts {
        let mut rng = substream(seed, Purpose::SpanningPair, attempt as u64);
        let w1 = g.elem(int_coords(&mut rng, g.dim(), SEARCH_HEIGHT));
        let w2 = g.elem(int_coords(&mut rng, g.dim(), SEARCH_HEIGHT));
        if let Some(pair) = SpanningPair::certify(w1, w2, PairSource::Random { attempt })? {
            return Ok(pair);
        }
    }
    Err(Error::CertificateNotFound { attempts })
}

/// Splits a solution of a `dim × 2dim` system into its two halves.
fn split(g: &Arc<LieAlg>, sol: Vector) -> (Elem, Elem) {
    let dim = g.dim();
    let mut first = sol;
    let second = first.split_off(dim);
    (g.elem(first), g.elem(second))
}

/// `z = [w1 ⊗ 1, X] + [w2 ⊗ 1, Y]`, solved degree by degree with free
/// variables set to zero.
pub fn two_bracket_decompose(z: &Current, pair: &SpanningPair) -> Result<(Current, Current)> {
    let g = z.parent();
    g.check_parent(&pair.w1)?;
    let system = pair.w1.ad_matrix().hstack(&pair.w2.ad_matrix());
    let mut xs = Vec::with_capacity(z.order());
    let mut ys = Vec::with_capacity(z.order());
    for zk in z.coeffs() {
        let sol = system
            .solve_particular(zk.coords())
            .expect("spanning pair certificate makes every degree solvable");
        let (x, y) = split(g, sol);
        xs.push(x);
        ys.push(y);
    }
    Ok((Current::new(g, xs)?, Current::new(g, ys)?))
}

/// `target = [a, b]` with `C(a) ∩ C(b) = 0`.
#[derive(Clone, Debug)]
pub struct StarSeed {
    a: Elem,
    b: Elem,
    target: Elem,
}

impl StarSeed {
    /// Checks `[a, b] = target` and `rank [ad a | ad b] = dim g`.
    pub fn certify(a: Elem, b: Elem, target: &Elem) -> Result<Option<StarSeed>> {
        if &a.bracket(&b)? != target {
            return Ok(None);
        }
        if a.image_sum_rank(&b)? != a.parent().dim() {
            return Ok(None);
        }
        Ok(Some(StarSeed {
            a,
            b,
            target: target.clone(),
        }))
    }

    pub fn a(&self) -> &Elem {
        &self.a
    }

    pub fn b(&self) -> &Elem {
        &self.b
    }

    pub fn target(&self) -> &Elem {
        &self.target
    }
}

/// The explicit `sl2` witnesses for targets on the `e`, `f` or `h` line.
fn sl2_witness(c: &Elem) -> Option<(Elem, Elem)> {
    let g = c.parent();
    if g.family() != Family::Sl || g.n() != 2 {
        return None;
    }
    let (e, f, h) = (g.basis_elem(0), g.basis_elem(1), g.basis_elem(2));
    let coords = c.coords();
    let half = ratio(1, 2);
    if coords[1].is_zero() && coords[2].is_zero() {
        // [h/2, λe] = λe
        Some((h.scale(&half), c.clone()))
    } else if coords[0].is_zero() && coords[2].is_zero() {
        // [-h/2, λf] = λf
        Some((h.scale(&-half), c.clone()))
    } else if coords[0].is_zero() && coords[1].is_zero() {
        // [e, λf] = λh
        Some((e, f.scale(&coords[2])))
    } else {
        None
    }
}

/// Random element of `V` (given by a basis) with integer weights.
fn random_combination(
    g: &Arc<LieAlg>,
    basis: &[Vector],
    rng: &mut impl Rng,
    height: u32,
) -> Vector {
    let weights = int_coords(rng, basis.len(), height);
    let mut out = zero_vector(g.dim());
    for (w, v) in weights.iter().zip(basis) {
        if w.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += w * x;
        }
    }
    out
}

/// Solves `[a, b] = c` for `b`, then adds a random element of `C(a)`.
fn random_preimage(a: &Elem, c: &Elem, rng: &mut impl Rng, height: u32) -> Option<Elem> {
    let g = a.parent();
    let ad = a.ad_matrix();
    let particular = ad.solve_particular(c.coords())?;
    let shift = random_combination(g, &ad.kernel_basis(), rng, height);
    Some(g.elem(particular.iter().zip(&shift).map(|(p, s)| p + s).collect()))
}

/// Searches for a representation `c = [a, b]` without common centralizer.
///
/// `a` is drawn from the Killing-orthogonal hyperplane of `c`: since `a`
/// lies in its own centralizer and `im ad a = C(a)^⊥`, every solvable `a`
/// lies there.
pub fn star_seed(c: &Elem, attempts: usize, seed: u64) -> Result<StarSeed> {
    if c.is_zero() {
        return Err(Error::ZeroTarget);
    }
    if let Some((a, b)) = sl2_witness(c) {
        if let Some(s) = StarSeed::certify(a, b, c)? {
            return Ok(s);
        }
    }
    let g = c.parent();
    let gram_row = Matrix::from_rows(vec![g.killing_gram().mul_vec(c.coords())]);
    let hyperplane = gram_row.kernel_basis();
    let mut consistent = 0;
    for attempt in 0..attempts {
        let mut rng = substream(seed, Purpose::StarSeed, attempt as u64);
        let a = g.elem(random_combination(g, &hyperplane, &mut rng, SEARCH_HEIGHT));
        if a.is_zero() {
            continue;
        }
        let Some(b) = random_preimage(&a, c, &mut rng, SEARCH_HEIGHT) else {
            continue;
        };
        consistent += 1;
        if let Some(s) = StarSeed::certify(a, b, c)? {
            return Ok(s);
        }
    }
    Err(Error::SeedNotFound {
        attempts,
        consistent,
    })
}

/// A single-bracket decomposition `z = [x, y]`.
#[derive(Clone, Debug)]
pub struct SingleBracket {
    pub x: Current,
    pub y: Current,
    /// Seed used for the lowest nonzero degree; absent for `z = 0`.
    pub seed: Option<StarSeed>,
    /// Lowest degree of `z`; `y` carries the factor `t^shift`.
    pub shift: usize,
}

/// Solves `[x, y] = z` through the degree recursion
/// `[x_0, y_k] + [x_k, y_0] = z_k - Σ_{0<i<k} [x_i, y_{k-i}]`.
///
/// When `z` starts in degree `m > 0`, the current `z / t^m` is solved and
/// `y` is multiplied by `t^m`.
pub fn single_bracket_solve(z: &Current, attempts: usize, seed: u64) -> Result<SingleBracket> {
    let g = z.parent();
    let order = z.order();
    let Some(shift) = z.lowest_degree() else {
        return Ok(SingleBracket {
            x: Current::zero(g, order),
            y: Current::zero(g, order),
            seed: None,
            shift: 0,
        });
    };
    let reduced = z.shift_down(shift);
    let star = star_seed(reduced.coeff(0), attempts, seed)?;
    let (x0, y0) = (star.a.clone(), star.b.clone());

    // (u, v) ↦ [u, y0] + [x0, v]
    let system = (-&y0.ad_matrix()).hstack(&x0.ad_matrix());
    let mut xs = vec![x0];
    let mut ys = vec![y0];
    for k in 1..reduced.order() {
        let mut rhs = reduced.coeff(k).clone();
        for i in 1..k {
            rhs = rhs.sub(&xs[i].bracket_unchecked(&ys[k - i]));
        }
        let sol = system
            .solve_particular(rhs.coords())
            .expect("seed certificate gives im(ad x0) + im(ad y0) = g");
        let (u, v) = split(g, sol);
        xs.push(u);
        ys.push(v);
    }
    xs.resize(order, g.zero());
    let x = Current::new(g, xs)?;
    let y = Current::new(g, ys)?.truncate(order).shift_up(shift);
    debug_assert_eq!(&x.cbracket(&y)?, z);
    Ok(SingleBracket {
        x,
        y,
        seed: Some(star),
        shift,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DrawStatus {
    Accepted,
    Inconsistent,
}

/// One draw of an obstruction campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub draw: usize,
    pub status: DrawStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_centralizer_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    /// Number of accepted samples wanted.
    pub samples: usize,
    pub height: u32,
    pub seed: u64,
    /// Draw budget; `None` means `samples * DRAW_BUDGET_FACTOR`.
    pub max_draws: Option<usize>,
    /// Worker threads. Has no influence on the result.
    pub workers: usize,
}

impl CampaignConfig {
    pub fn new(samples: usize, height: u32, seed: u64) -> Self {
        CampaignConfig {
            samples,
            height,
            seed,
            max_draws: None,
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub algebra: String,
    pub target: ElemJson,
    pub seed: u64,
    pub height: u32,
    pub samples_requested: usize,
    pub samples_accepted: usize,
    pub draws: usize,
    pub skipped_inconsistent: usize,
    pub min_common_centralizer_dim: usize,
    pub max_common_centralizer_dim: usize,
    /// Accepted samples with zero common centralizer (condition (*) witnesses).
    pub zero_centralizer_samples: usize,
    /// Accepted samples whose generated subalgebra is not solvable.
    pub solvable_failures: usize,
}

#[derive(Clone, Debug)]
pub struct CampaignOutcome {
    pub report: ObstructionReport,
    pub log: Vec<SampleRecord>,
}

fn campaign_draw(g: &Arc<LieAlg>, c: &Elem, height: u32, seed: u64, draw: usize) -> SampleRecord {
    let mut rng = substream(seed, Purpose::Campaign, draw as u64);
    let a = g.elem(int_coords(&mut rng, g.dim(), height));
    let Some(b) = random_preimage(&a, c, &mut rng, height) else {
        return SampleRecord {
            draw,
            status: DrawStatus::Inconsistent,
            a: None,
            b: None,
            common_centralizer_dim: None,
            generated_dim: None,
            solvable: None,
        };
    };
    let ccd = a.common_centralizer(&b).expect("same parent").dim();
    let generated = g
        .generated_subalgebra(&[a.clone(), b.clone()])
        .expect("same parent");
    let solvable = generated
        .is_solvable()
        .expect("generated subalgebras are closed");
    SampleRecord {
        draw,
        status: DrawStatus::Accepted,
        a: Some(json::vector_to_json(a.coords())),
        b: Some(json::vector_to_json(b.coords())),
        common_centralizer_dim: Some(ccd),
        generated_dim: Some(generated.dim()),
        solvable: Some(solvable),
    }
}

fn run_draws(
    g: &Arc<LieAlg>,
    c: &Elem,
    cfg: &CampaignConfig,
    range: std::ops::Range<usize>,
) -> Vec<SampleRecord> {
    let workers = cfg.workers.max(1).min(range.len().max(1));
    if workers == 1 {
        return range
            .map(|d| campaign_draw(g, c, cfg.height, cfg.seed, d))
            .collect();
    }
    let chunk = range.len().div_ceil(workers);
    let starts: Vec<usize> = range.clone().step_by(chunk).collect();
    thread::scope(|s| {
        let handles: Vec<_> = starts
            .iter()
            .map(|&lo| {
                let hi = (lo + chunk).min(range.end);
                s.spawn(move || {
                    (lo..hi)
                        .map(|d| campaign_draw(g, c, cfg.height, cfg.seed, d))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("campaign worker panicked"))
            .collect()
    })
}

/// Samples solutions of `[a, b] = c` with `a` uniform in `[-height, height]`
/// coordinates, skipping inconsistent draws, until `samples` draws are
/// accepted or the draw budget runs out.
///
/// Draw `d` uses its own random substream, and draws are processed in
/// batches whose results are merged in draw order, so the outcome does not
/// depend on `workers`.
pub fn obstruction_campaign(c: &Elem, cfg: &CampaignConfig) -> Result<CampaignOutcome> {
    if c.is_zero() {
        return Err(Error::ZeroTarget);
    }
    if cfg.height == 0 {
        return Err(Error::ParameterOutOfRange(
            "height must be at least 1".into(),
        ));
    }
    if cfg.samples == 0 {
        return Err(Error::ParameterOutOfRange(
            "samples must be at least 1".into(),
        ));
    }
    let g = c.parent();
    let max_draws = cfg
        .max_draws
        .unwrap_or(cfg.samples.saturating_mul(DRAW_BUDGET_FACTOR));
    let batch = 64 * cfg.workers.max(1);

    let mut log = Vec::new();
    let mut accepted = 0;
    let mut next = 0;
    'outer: while next < max_draws && accepted < cfg.samples {
        let end = (next + batch).min(max_draws);
        for rec in run_draws(g, c, cfg, next..end) {
            if rec.status == DrawStatus::Accepted {
                accepted += 1;
            }
            log.push(rec);
            if accepted == cfg.samples {
                break 'outer;
            }
        }
        next = end;
    }

    let draws = log.len();
    if accepted == 0 {
        return Err(Error::NoSamplesAccepted { draws });
    }
    let dims: Vec<usize> = log
        .iter()
        .filter_map(|r| r.common_centralizer_dim)
        .collect();
    let report = ObstructionReport {
        algebra: g.id().to_string(),
        target: ElemJson::from_elem(c),
        seed: cfg.seed,
        height: cfg.height,
        samples_requested: cfg.samples,
        samples_accepted: accepted,
        draws,
        skipped_inconsistent: draws - accepted,
        min_common_centralizer_dim: *dims.iter().min().expect("accepted > 0"),
        max_common_centralizer_dim: *dims.iter().max().expect("accepted > 0"),
        zero_centralizer_samples: dims.iter().filter(|&&d| d == 0).count(),
        solvable_failures: log.iter().filter(|r| r.solvable == Some(false)).count(),
    };
    Ok(CampaignOutcome { report, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn alg(family: Family, n: usize) -> Arc<LieAlg> {
        LieAlg::build(family, n).unwrap()
    }

    #[test]
    fn principal_pairs_certify() {
        let sl2 = alg(Family::Sl, 2);
        let p = spanning_pair(&sl2, 16, 0).unwrap();
        assert_eq!(p.w1(), &sl2.basis_elem(0));
        assert_eq!(p.w2(), &sl2.basis_elem(1));
        assert_eq!(p.certificate_rank(), 3);
        assert_eq!(p.source(), &PairSource::Principal);

        let sl3 = alg(Family::Sl, 3);
        let p = spanning_pair(&sl3, 16, 0).unwrap();
        let e = |i, j| sl3.basis_elem(sl3.sl_unit_index(i, j));
        assert_eq!(p.w1(), &e(0, 1).add(&e(1, 2)));
        assert_eq!(p.w2(), &e(1, 0).add(&e(2, 1)));
        assert_eq!(p.certificate_rank(), 8);

        let sp2 = alg(Family::Sp, 1);
        let p = spanning_pair(&sp2, 16, 0).unwrap();
        assert_eq!(p.w1().matrix(), &Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(p.w2().matrix(), &Matrix::from_i64(&[&[0, 0], &[1, 0]]));
        assert_eq!(p.certificate_rank(), 3);

        for n in 2..=3 {
            let sp = alg(Family::Sp, n);
            assert_eq!(
                spanning_pair(&sp, 16, 0).unwrap().source(),
                &PairSource::Principal
            );
        }
    }

    #[test]
    fn so_falls_back_to_random_pairs() {
        let so4 = alg(Family::So, 4);
        let p = spanning_pair(&so4, 16, 3).unwrap();
        assert!(matches!(p.source(), PairSource::Random { .. }));
        assert_eq!(p.certificate_rank(), so4.dim());
        assert!(spanning_pair(&so4, 0, 3).is_err());
    }

    #[test]
    fn two_bracket_on_h() {
        let g = alg(Family::Sl, 2);
        let pair = spanning_pair(&g, 16, 0).unwrap();
        let z = Current::constant(&g.basis_elem(2), 1);
        let (x, y) = two_bracket_decompose(&z, &pair).unwrap();
        let w1 = Current::constant(pair.w1(), 1);
        let w2 = Current::constant(pair.w2(), 1);
        let back = w1
            .cbracket(&x)
            .unwrap()
            .add(&w2.cbracket(&y).unwrap())
            .unwrap();
        assert_eq!(back, z);

        let zero = Current::zero(&g, 3);
        let (x, y) = two_bracket_decompose(&zero, &pair).unwrap();
        assert!(x.is_zero() && y.is_zero());
    }

    #[test]
    fn sl2_explicit_witnesses() {
        let g = alg(Family::Sl, 2);
        let (e, f, h) = (g.basis_elem(0), g.basis_elem(1), g.basis_elem(2));
        let s = star_seed(&e, 64, 0).unwrap();
        assert_eq!(s.a(), &h.scale(&ratio(1, 2)));
        assert_eq!(s.b(), &e);
        let s = star_seed(&h, 64, 0).unwrap();
        assert_eq!((s.a(), s.b()), (&e, &f));
        assert!(matches!(
            star_seed(&g.zero(), 64, 0),
            Err(Error::ZeroTarget)
        ));
    }

    #[test]
    fn sl2_random_targets_find_seeds() {
        let g = alg(Family::Sl, 2);
        let c = g.elem(vec![rat(2), rat(-1), rat(3)]);
        let s = star_seed(&c, 64, 9).unwrap();
        assert_eq!(s.a().bracket(s.b()).unwrap(), c);
        assert_eq!(s.a().image_sum_rank(s.b()).unwrap(), 3);
    }

    /// `dim {X in sl_n : [a, X] = [b, X] = 0}` from raw matrix equations.
    fn raw_common_centralizer_dim(a: &Matrix, b: &Matrix) -> usize {
        let n = a.rows();
        let mut eqs = Vec::new();
        for m in [a, b] {
            for r in 0..n {
                for c in 0..n {
                    eqs.push(Matrix::from_fn(n, n, |p, q| {
                        let mut v = rat(0);
                        if p == r {
                            v += &m[(q, c)];
                        }
                        if q == c {
                            v -= &m[(r, p)];
                        }
                        v
                    }));
                }
            }
        }
        let mut rows: Vec<Vector> = eqs.iter().map(|e| e.entries().to_vec()).collect();
        rows.push(Matrix::identity(n).entries().to_vec());
        let sys = Matrix::from_rows(rows);
        n * n - sys.rank()
    }

    #[test]
    fn sl3_minimal_nilpotent_seed_is_a_certificate() {
        let g = alg(Family::Sl, 3);
        let c = g.minimal_nilpotent().unwrap();
        let s = star_seed(&c, 64, 1).unwrap();
        assert_eq!(s.a().matrix().commutator(s.b().matrix()), *c.matrix());
        assert_eq!(
            raw_common_centralizer_dim(s.a().matrix(), s.b().matrix()),
            0
        );
    }

    #[test]
    fn diagonal_construction_gives_rank_one_seed() {
        // a = diag(1, 2, -3), b = E13/4 + E23/5: [a, b] = E13 + E23, and a
        // diagonal X commuting with b has x1 = x3 = x2
        let g = alg(Family::Sl, 3);
        let a = g
            .elem_from_matrix(Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]))
            .unwrap();
        let mut bm = Matrix::zeros(3, 3);
        bm[(0, 2)] = ratio(1, 4);
        bm[(1, 2)] = ratio(1, 5);
        let b = g.elem_from_matrix(bm).unwrap();
        let c = g
            .elem_from_matrix(Matrix::from_i64(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]))
            .unwrap();
        assert!(StarSeed::certify(a.clone(), b.clone(), &c)
            .unwrap()
            .is_some());
        assert_eq!(raw_common_centralizer_dim(a.matrix(), b.matrix()), 0);
    }

    #[test]
    fn exhausted_budget_reports_seed_not_found() {
        let g = alg(Family::Sl, 3);
        let c = g.minimal_nilpotent().unwrap();
        match star_seed(&c, 0, 1) {
            Err(Error::SeedNotFound {
                attempts: 0,
                consistent: 0,
            }) => {}
            other => panic!("expected SeedNotFound, got {other:?}"),
        }
        assert!(matches!(star_seed(&g.zero(), 8, 1), Err(Error::ZeroTarget)));
    }

    #[test]
    fn single_bracket_hand_example() {
        let g = alg(Family::Sl, 2);
        let (e, _, h) = (g.basis_elem(0), g.basis_elem(1), g.basis_elem(2));
        let z = Current::new(&g, vec![h, e]).unwrap();
        let sol = single_bracket_solve(&z, 64, 0).unwrap();
        assert_eq!(sol.x.cbracket(&sol.y).unwrap(), z);
        assert_eq!(sol.shift, 0);
    }

    #[test]
    fn single_bracket_zero_and_shift() {
        let g = alg(Family::Sl, 2);
        let zero = Current::zero(&g, 4);
        let sol = single_bracket_solve(&zero, 64, 0).unwrap();
        assert!(sol.x.is_zero() && sol.y.is_zero() && sol.seed.is_none());

        let z = Current::random(&g, 6, 2, 5).unwrap().shift_up(2);
        let sol = single_bracket_solve(&z, 64, 0).unwrap();
        assert_eq!(sol.shift, 2);
        let back = sol.x.cbracket(&sol.y).unwrap();
        assert_eq!(back, z);
        assert!(back.lowest_degree().unwrap() >= 2);
    }

    #[test]
    fn campaign_counts_match_log() {
        let g = alg(Family::Sl, 3);
        let c = g.minimal_nilpotent().unwrap();
        let out = obstruction_campaign(&c, &CampaignConfig::new(20, 1, 4)).unwrap();
        let r = &out.report;
        assert_eq!(r.samples_accepted, 20);
        assert_eq!(r.draws, out.log.len());
        assert_eq!(
            r.skipped_inconsistent,
            out.log
                .iter()
                .filter(|s| s.status == DrawStatus::Inconsistent)
                .count()
        );
        assert_eq!(r.solvable_failures, 0);
        assert!(r.samples_accepted <= r.samples_requested);
    }

    #[test]
    fn campaign_is_worker_independent() {
        let g = alg(Family::Sl, 3);
        let c = g.minimal_nilpotent().unwrap();
        let mut cfg = CampaignConfig::new(15, 1, 8);
        let seq = obstruction_campaign(&c, &cfg).unwrap();
        cfg.workers = 3;
        let par = obstruction_campaign(&c, &cfg).unwrap();
        assert_eq!(seq.report, par.report);
        assert_eq!(seq.log, par.log);
    }

    #[test]
    fn campaign_rejects_bad_input() {
        let g = alg(Family::Sl, 2);
        assert!(matches!(
            obstruction_campaign(&g.zero(), &CampaignConfig::new(5, 1, 0)),
            Err(Error::ZeroTarget)
        ));
        let e = g.basis_elem(0);
        let mut cfg = CampaignConfig::new(5, 1, 0);
        cfg.max_draws = Some(0);
        assert!(matches!(
            obstruction_campaign(&e, &cfg),
            Err(Error::NoSamplesAccepted { draws: 0 })
        ));
    }
}
