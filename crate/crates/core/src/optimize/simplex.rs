//! Nelder–Mead downhill simplex (minimization).

/// Outcome of one simplex run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub evaluations: u64,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `f` from `x0` with reflection, expansion, contraction and
/// shrink coefficients 1, 2, 1/2, 1/2.
///
/// The initial simplex perturbs each coordinate by 5% (0.00025 when zero).
/// Converged when the spread of vertex values is at most `tol` and no
/// vertex lies farther than `sqrt(tol)` from the best one in any coordinate.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], max_iters: usize, tol: f64) -> SimplexOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let x_tol = tol.sqrt();
    let mut evaluations = 0u64;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    pts.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] = if p[i] != 0.0 { 1.05 * p[i] } else { 0.00025 };
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p)).collect();
    let mut order: Vec<usize> = (0..=n).collect();
    let mut converged = false;

    for _ in 0..max_iters {
        // stable sort keeps ties in vertex order, so runs are reproducible
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let best = order[0];
        let worst = order[n];
        let second = order[n - 1];

        let f_spread = vals[worst] - vals[best];
        let x_spread = pts
            .iter()
            .flat_map(|p| p.iter().zip(&pts[best]).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if f_spread <= tol && x_spread <= x_tol {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; n];
        for &i in &order[..n] {
            for (c, v) in centroid.iter_mut().zip(&pts[i]) {
                *c += v;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= n as f64);

        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&pts[worst]).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = along(REFLECT);
        let fr = eval(&xr);
        if fr < vals[best] {
            let xe = along(REFLECT * EXPAND);
            let fe = eval(&xe);
            if fe < fr {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if fr < vals[second] {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        let (xc, fc, accept) = if fr < vals[worst] {
            let xc = along(REFLECT * CONTRACT);
            let fc = eval(&xc);
            (xc, fc, fc <= fr)
        } else {
            let xc = along(-CONTRACT);
            let fc = eval(&xc);
            (xc, fc, fc < vals[worst])
        };
        if accept {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        let anchor = pts[best].clone();
        for &i in &order[1..] {
            let p: Vec<f64> = anchor.iter().zip(&pts[i]).map(|(a, x)| a + SHRINK * (x - a)).collect();
            vals[i] = eval(&p);
            pts[i] = p;
        }
    }

    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let best = order[0];
    SimplexOutcome { x: pts[best].clone(), f: vals[best], evaluations, converged }
}
