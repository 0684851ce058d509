//! Double-exponential quadrature for the three interval shapes the catalog
//! needs: finite intervals (tanh-sinh), semi-infinite intervals (exp-sinh)
//! and the whole real line (two exp-sinh halves).
//!
//! The schemes tolerate integrable endpoint singularities. Abscissae are
//! stored as exact distances from the endpoints, so a singular integrand is
//! sampled with full precision wherever f64 can represent the point at all.
//! In the narrow band where a node's true abscissa is closer to an endpoint
//! than one ulp, the node falls onto the endpoint itself; if the integrand
//! blows up there, its local power-law behavior is fitted from the nearest
//! representable samples and the collided nodes are filled in from the fit.
//! A non-finite value anywhere else (with non-negligible weight) is an
//! error, not a singularity.
//!
//! All internal exponentials clamp arguments below −745 to exactly zero, so
//! doubly exponential tails underflow cleanly instead of producing NaNs.

use std::sync::OnceLock;

use thiserror::Error;

/// Highest refinement level; step h = 2^{−level}.
const MAX_LEVEL: usize = 12;

/// Weights below this are endpoint-tolerance territory: a non-finite
/// integrand value there is an integrable endpoint blow-up, not a bug.
const NEGLIGIBLE_WEIGHT: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("integrand returned a non-finite value at interior node x = {x}")]
    NonFiniteInterior { x: f64 },
    #[error("invalid integration bounds: lo = {lo}, hi = {hi}")]
    BadBounds { lo: f64, hi: f64 },
    #[error("tolerance {0} outside [1e-14, 1e-3]")]
    BadTolerance(f64),
    #[error("breakpoints must be strictly increasing and above the lower limit")]
    BadBreakpoints,
}

pub type Result<T> = std::result::Result<T, QuadError>;

/// Outcome of a quadrature call.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    /// Estimate of the integral.
    pub value: f64,
    /// |level L − level L−1| difference, the standard double-exponential
    /// error proxy. Conservative at these tolerances.
    pub error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
    /// True only when `error_estimate <= tol` was reached.
    pub converged: bool,
}

impl QuadratureResult {
    fn combine(pieces: &[QuadratureResult]) -> QuadratureResult {
        QuadratureResult {
            value: pieces.iter().map(|p| p.value).sum(),
            error_estimate: pieces.iter().map(|p| p.error_estimate).sum(),
            evaluations: pieces.iter().map(|p| p.evaluations).sum(),
            converged: pieces.iter().all(|p| p.converged),
        }
    }
}

/// exp with hard underflow clamp: arguments below −745 give exactly 0.
#[inline]
pub fn exp_clamped(x: f64) -> f64 {
    if x < -745.0 {
        0.0
    } else {
        x.exp()
    }
}

fn check_tol(tol: f64) -> Result<f64> {
    if !(1e-14..=1e-3).contains(&tol) {
        return Err(QuadError::BadTolerance(tol));
    }
    Ok(tol)
}

// --- node tables -------------------------------------------------------------

/// One tanh-sinh node at t > 0 on the reference interval [−1, 1]:
/// `offset` = 1 − x stored directly so abscissae near an endpoint keep full
/// relative precision, `weight` = (π/2) cosh t / cosh²((π/2) sinh t)
/// without the step-size factor.
#[derive(Clone, Copy)]
struct TsNode {
    offset: f64,
    weight: f64,
}

/// One exp-sinh node: abscissa is lo + `radius`, weight again without h.
#[derive(Clone, Copy)]
struct EsNode {
    radius: f64,
    weight: f64,
}

/// Nodes for level L hold only the abscissae new at that level
/// (odd multiples of h_L; level 0 holds the integer grid).
struct NodeTables {
    tanh_sinh: Vec<Vec<TsNode>>,
    exp_sinh: Vec<Vec<EsNode>>,
}

fn tables() -> &'static NodeTables {
    static TABLES: OnceLock<NodeTables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// Abscissae are capped so x and x² stay representable: beyond e^350 ≈ 1e152
/// any absolutely convergent integrand contributes less than underflow, while
/// squares inside rational integrands would start producing inf/inf.
const ES_MAX_EXPONENT: f64 = 350.0;

fn ts_node(t: f64) -> TsNode {
    let u = FRAC_PI_2 * t.sinh();
    // 1 − tanh u = 2 / (1 + e^{2u}), computed without cancellation.
    let offset = 2.0 / (1.0 + exp_clamped(2.0 * u));
    let sech = 1.0 / u.cosh();
    TsNode {
        offset,
        weight: FRAC_PI_2 * t.cosh() * sech * sech,
    }
}

fn es_node(t: f64) -> Option<EsNode> {
    let u = FRAC_PI_2 * t.sinh();
    if u > ES_MAX_EXPONENT {
        return None;
    }
    let radius = exp_clamped(u);
    if radius <= 0.0 {
        return None;
    }
    Some(EsNode {
        radius,
        weight: FRAC_PI_2 * t.cosh() * radius,
    })
}

fn build_tables() -> NodeTables {
    let ts_tmax = 6.2;
    let es_tmax = 7.0;

    let mut tanh_sinh = Vec::with_capacity(MAX_LEVEL + 1);
    let mut exp_sinh = Vec::with_capacity(MAX_LEVEL + 1);
    for level in 0..=MAX_LEVEL {
        let h = 0.5f64.powi(level as i32);
        let stride = if level == 0 { 1 } else { 2 };

        let mut ts = Vec::new();
        let mut j = 1;
        loop {
            let t = j as f64 * h;
            if t > ts_tmax {
                break;
            }
            let node = ts_node(t);
            if node.weight > 0.0 && node.offset > 0.0 {
                ts.push(node);
            }
            j += stride;
        }
        tanh_sinh.push(ts);

        let mut es = Vec::new();
        if level == 0 {
            es.extend(es_node(0.0));
        }
        let mut j = 1;
        loop {
            let t = j as f64 * h;
            if t > es_tmax {
                break;
            }
            es.extend(es_node(t));
            es.extend(es_node(-t));
            j += stride;
        }
        exp_sinh.push(es);
    }
    NodeTables {
        tanh_sinh,
        exp_sinh,
    }
}

// --- endpoint-singularity rescue ----------------------------------------------

/// Local model of the integrand next to one endpoint.
///
/// Within `guard_zone` of a non-zero endpoint the f64 grid is too coarse for
/// the abscissa `endpoint ∓ d` to be represented faithfully, so instead of
/// evaluating there the integrand is extrapolated as sign·A·d^{−p} from the
/// two closest samples outside the zone (whose distances are exact). This
/// keeps integrable power-law blow-ups at full accuracy; p ≥ 1 means the
/// blow-up is not integrable and the node is dropped. For an endpoint at 0
/// the zone is empty: every distance is exactly representable there.
#[derive(Clone)]
struct EdgeFit {
    guard_zone: f64,
    // Samples just outside the zone, kept sorted by distance; only the band
    // within a few decades of the zone matters for the fit.
    samples: Vec<(f64, f64)>,
}

/// Minimum distance ratio between the two fit anchors. Anchors closer than
/// this make the fitted exponent numerically meaningless.
const FIT_SEPARATION: f64 = 8.0;

impl EdgeFit {
    fn new(endpoint: f64, interval: f64) -> EdgeFit {
        // ~4e-9·|endpoint| balances the abscissa rounding error of the
        // samples just outside the zone (∝ ε/√zone) against the power-law
        // model error over the zone (∝ √zone · zone); both land near 1e-12
        // for unit-scale endpoints. Capped so short intervals keep nodes.
        let zone = endpoint.abs() * 2f64.powi(-28);
        EdgeFit {
            guard_zone: zone.min(interval * 2f64.powi(-8)),
            samples: Vec::new(),
        }
    }

    fn observe(&mut self, d: f64, value: f64) {
        if value == 0.0 || d > self.guard_zone * 1024.0 {
            return;
        }
        if let Err(pos) = self
            .samples
            .binary_search_by(|probe| probe.0.partial_cmp(&d).unwrap())
        {
            self.samples.insert(pos, (d, value));
        }
    }

    fn extrapolate(&self, d: f64) -> Option<f64> {
        let &(d1, f1) = self.samples.first()?;
        let &(d2, f2) = self
            .samples
            .iter()
            .find(|(dd, _)| *dd >= FIT_SEPARATION * d1)?;
        if f1.signum() != f2.signum() {
            return None;
        }
        let p = (f1.abs() / f2.abs()).ln() / (d2 / d1).ln();
        if p >= 1.0 {
            return None; // non-integrable blow-up
        }
        // Negative p means the integrand is simply smooth and decreasing
        // toward the endpoint; constant continuation of the nearest sample
        // is then the right model. The ratio d1/d can overflow for denormal
        // d, so the power is taken in log space.
        let p = p.max(0.0);
        Some(f1 * exp_clamped(p * (d1.ln() - d.ln())))
    }
}

/// Bookkeeping for one endpoint: the evolving blow-up fit plus every node
/// that fell inside the guard zone so far. Zone nodes are re-extrapolated
/// from the current fit at every level, so nodes seen before the fit had
/// enough samples are filled in retroactively.
struct ZoneTracker {
    fit: EdgeFit,
    nodes: Vec<(f64, f64)>, // (distance, weight without step size)
}

impl ZoneTracker {
    fn new(endpoint: f64, interval: f64) -> ZoneTracker {
        ZoneTracker {
            fit: EdgeFit::new(endpoint, interval),
            nodes: Vec::new(),
        }
    }

    /// Claim a node for the guard zone; returns false if it lies outside.
    fn claim(&mut self, d: f64, weight: f64) -> bool {
        if d < self.fit.guard_zone {
            self.nodes.push((d, weight));
            true
        } else {
            false
        }
    }

    fn total(&self) -> f64 {
        self.nodes
            .iter()
            .map(|&(d, w)| self.fit.extrapolate(d).map_or(0.0, |f| w * f))
            .sum()
    }
}

// --- level-refinement driver ---------------------------------------------------

/// Accumulate levels of a double-exponential rule until the last two level
/// estimates differ by at most `tol`. The per-level closure returns the sum
/// over the nodes new at that level, excluding guard-zone nodes, which are
/// claimed by the trackers and re-totalled each level.
fn refine<E>(tol: f64, zones: &mut [&mut ZoneTracker], mut eval_level: E) -> Result<QuadratureResult>
where
    E: FnMut(usize, &mut usize, &mut [&mut ZoneTracker]) -> Result<f64>,
{
    let mut evaluations = 0usize;
    let mut partial = 0.0; // Σ over all non-zone nodes seen so far (no h factor)
    let mut prev = f64::NAN;
    let mut value = f64::NAN;
    let mut error = f64::NAN;
    let mut converged = false;
    for level in 0..=MAX_LEVEL {
        partial += eval_level(level, &mut evaluations, zones)?;
        let zone_total: f64 = zones.iter().map(|z| z.total()).sum();
        let h = 0.5f64.powi(level as i32);
        value = h * (partial + zone_total);
        if !value.is_finite() {
            // Divergent or pathological integrand: report, never crash.
            return Ok(QuadratureResult {
                value,
                error_estimate: f64::INFINITY,
                evaluations,
                converged: false,
            });
        }
        if level > 0 {
            error = (value - prev).abs();
            // The minimum level guards against accidental coarse-grid
            // agreement before the rule has seen the integrand's shape.
            if level >= 3 && error <= tol {
                converged = true;
                break;
            }
        }
        prev = value;
    }
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
        converged,
    })
}

/// Tanh-sinh quadrature of `f` over the finite interval [lo, hi].
///
/// `f` may blow up (or return NaN) at either endpoint; an interior
/// non-finite value is an error naming the offending node.
pub fn integrate_finite<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let tol = check_tol(tol)?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(QuadError::BadBounds { lo, hi });
    }
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (lo + hi);
    let tables = tables();
    let mut left = ZoneTracker::new(lo, hi - lo);
    let mut right = ZoneTracker::new(hi, hi - lo);
    refine(tol, &mut [&mut left, &mut right], |level, evals, zones| {
        let mut sum = 0.0;
        if level == 0 {
            let fx = f(mid);
            *evals += 1;
            if !fx.is_finite() {
                return Err(QuadError::NonFiniteInterior { x: mid });
            }
            sum += FRAC_PI_2 * half * fx;
        }
        for node in &tables.tanh_sinh[level] {
            let w = node.weight * half;
            let d = node.offset * half; // exact distance to either endpoint
            let [zone_left, zone_right] = zones else {
                unreachable!()
            };
            for (x, zone) in [(lo + d, &mut *zone_left), (hi - d, &mut *zone_right)] {
                if zone.claim(d, w) {
                    continue;
                }
                let fx = f(x);
                *evals += 1;
                if fx.is_finite() {
                    sum += w * fx;
                    zone.fit.observe(d, fx);
                } else if w >= NEGLIGIBLE_WEIGHT {
                    return Err(QuadError::NonFiniteInterior { x });
                }
            }
        }
        Ok(sum)
    })
}

/// Exp-sinh quadrature of `f` over the semi-infinite interval (lo, ∞).
pub fn integrate_semi_infinite<F>(f: F, lo: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let tol = check_tol(tol)?;
    if !lo.is_finite() {
        return Err(QuadError::BadBounds {
            lo,
            hi: f64::INFINITY,
        });
    }
    let tables = tables();
    let mut edge = ZoneTracker::new(lo, f64::INFINITY);
    refine(tol, &mut [&mut edge], |level, evals, zones| {
        let mut sum = 0.0;
        let [zone] = zones else { unreachable!() };
        for node in &tables.exp_sinh[level] {
            if zone.claim(node.radius, node.weight) {
                continue;
            }
            let x = lo + node.radius;
            let fx = f(x);
            *evals += 1;
            if fx.is_finite() {
                sum += node.weight * fx;
                if node.radius < 1.0 {
                    zone.fit.observe(node.radius, fx);
                }
            } else if node.weight >= NEGLIGIBLE_WEIGHT {
                return Err(QuadError::NonFiniteInterior { x });
            }
        }
        Ok(sum)
    })
}

/// Integral of `f` over the whole real line, split at 0 into two
/// semi-infinite halves.
pub fn integrate_real_line<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let tol = check_tol(tol)?;
    let right = integrate_semi_infinite(&f, 0.0, tol)?;
    let left = integrate_semi_infinite(|x| f(-x), 0.0, tol)?;
    Ok(QuadratureResult::combine(&[left, right]))
}

/// Piecewise integral of `f` over (lo, ∞) split at the given strictly
/// increasing breakpoints; each piece endpoint is treated as a potential
/// singularity. An empty breakpoint list behaves as
/// [`integrate_semi_infinite`].
pub fn integrate_with_splits<F>(
    f: F,
    lo: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let tol = check_tol(tol)?;
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) || breakpoints.iter().any(|&b| b <= lo) {
        return Err(QuadError::BadBreakpoints);
    }
    let mut pieces = Vec::with_capacity(breakpoints.len() + 1);
    let mut left = lo;
    for &b in breakpoints {
        pieces.push(integrate_finite(&f, left, b, tol)?);
        left = b;
    }
    pieces.push(integrate_semi_infinite(&f, left, tol)?);
    Ok(QuadratureResult::combine(&pieces))
}
