//! Finding cycles from incidence, centre, focus and orthogonality conditions.
//!
//! Each condition is a linear or quadratic form in `(k, l, n, m)`. The linear
//! ones cut out a subspace; at most one projective dimension may remain and
//! is then resolved by a quadratic condition.

use std::cmp::Ordering;

use super::{CycleQuadruple, FsccContext};
use crate::error::{Error, Result};
use crate::hypercomplex::SpaceSign;
use crate::moebius::Point;
use crate::relations::pairing_functional;
use crate::scalar::{max_abs, one_if_zero, Scalar};

#[derive(Debug, Clone)]
pub enum Constraint<S> {
    /// The σ-realisation passes through `point`.
    PassesThrough { point: Point<S>, sigma: SpaceSign },
    /// The `kind`-centre `(l/k, -kind·n/k)` equals `centre`.
    HasCentre { centre: Point<S>, kind: SpaceSign },
    /// The σ̆-focus equals `focus`; solutions with `k = 0` or `n = 0` are dropped.
    HasFocus { focus: Point<S>, sigma_cycle: SpaceSign },
    /// σ̆-orthogonal to `cycle`.
    OrthogonalTo { cycle: CycleQuadruple<S>, ctx: FsccContext },
    /// `c·(k, l, n, m) = 0` for an arbitrary linear functional `c`.
    Linear { coefficients: [S; 4] },
    /// Solutions must have `k ≠ 0`; they are returned with `k = 1`.
    NormalisedK,
}

type Vec4<S> = [S; 4];
type Quadratic<S> = [[S; 4]; 4];

fn zeros<S: Scalar>() -> Vec4<S> {
    [S::zero(), S::zero(), S::zero(), S::zero()]
}

fn zero_form<S: Scalar>() -> Quadratic<S> {
    [zeros(), zeros(), zeros(), zeros()]
}

fn bilinear<S: Scalar>(q: &Quadratic<S>, x: &Vec4<S>, y: &Vec4<S>) -> S {
    let mut acc = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc = acc + x[i].clone() * q[i][j].clone() * y[j].clone();
        }
    }
    acc
}

fn combine<S: Scalar>(t0: &S, b0: &Vec4<S>, t1: &S, b1: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| t0.clone() * b0[i].clone() + t1.clone() * b1[i].clone())
}

/// Basis of `{x : row·x = 0 for every row}` by reduced row echelon form.
fn nullspace<S: Scalar>(rows: &[Vec4<S>]) -> Vec<Vec4<S>> {
    let mut a: Vec<Vec4<S>> = rows.to_vec();
    let scale = one_if_zero(max_abs(&a.iter().flatten().collect::<Vec<_>>()));
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        if r == a.len() {
            break;
        }
        let best = (r..a.len()).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(Ordering::Equal)
        });
        let Some(p) = best else { break };
        if a[p][col].near_zero(&scale) {
            continue;
        }
        a.swap(r, p);
        let pv = a[r][col].clone();
        for c in 0..4 {
            a[r][c] = a[r][c].clone() / pv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..4 {
                    a[i][c] = a[i][c].clone() - f.clone() * a[r][c].clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..4)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = zeros::<S>();
            v[free] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Projective roots `(t0 : t1)` of `A t0² + 2B t0 t1 + C t1²`.
fn binary_roots<S: Scalar>(a: &S, b: &S, c: &S) -> Result<Vec<(S, S)>> {
    let disc = b.clone() * b.clone() - a.clone() * c.clone();
    let disc_scale = one_if_zero(max_abs(&[&(b.clone() * b.clone()), &(a.clone() * c.clone())]));
    if disc.near_zero(&disc_scale) {
        return Ok(vec![if a.is_zero() { (S::one(), S::zero()) } else { (-b.clone(), a.clone()) }]);
    }
    if disc < S::zero() {
        return Ok(Vec::new());
    }
    let root = disc
        .sqrt_checked()
        .ok_or_else(|| Error::NotRational(format!("solution needs sqrt({disc})")))?;
    // q = -(b + sgn(b)·root) avoids cancellation; the roots are q/a and c/q
    let q = if b.is_negative() { root - b.clone() } else { -(b.clone() + root) };
    Ok(vec![(q.clone(), a.clone()), (c.clone(), q)])
}

fn lex_cmp<S: Scalar>(a: &CycleQuadruple<S>, b: &CycleQuadruple<S>) -> Ordering {
    a.components()
        .iter()
        .zip(b.components())
        .map(|(x, y)| x.partial_cmp(&y).unwrap_or(Ordering::Equal))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

struct System<S> {
    rows: Vec<Vec4<S>>,
    forms: Vec<Quadratic<S>>,
    normalised: bool,
    needs_focus: bool,
}

impl<S: Scalar> System<S> {
    fn collect(constraints: &[Constraint<S>]) -> Self {
        let two = S::int(2);
        let mut sys = System { rows: Vec::new(), forms: Vec::new(), normalised: false, needs_focus: false };
        for c in constraints {
            match c {
                Constraint::PassesThrough { point, sigma } => {
                    let sig: S = sigma.scalar();
                    let (u, v) = (&point.u, &point.v);
                    sys.rows.push([
                        u.clone() * u.clone() - sig * v.clone() * v.clone(),
                        -(two.clone() * u.clone()),
                        -(two.clone() * v.clone()),
                        S::one(),
                    ]);
                }
                Constraint::HasCentre { centre, kind } => {
                    sys.rows.push([-centre.u.clone(), S::one(), S::zero(), S::zero()]);
                    sys.rows.push([-centre.v.clone(), S::zero(), -kind.scalar::<S>(), S::zero()]);
                }
                Constraint::HasFocus { focus, sigma_cycle } => {
                    sys.rows.push([-focus.u.clone(), S::one(), S::zero(), S::zero()]);
                    // σ̆n² - l² + mk - 2·v_f·nk = 0
                    let mut q = zero_form::<S>();
                    q[2][2] = sigma_cycle.scalar();
                    q[1][1] = -S::one();
                    q[0][3] = S::ratio(1, 2);
                    q[3][0] = S::ratio(1, 2);
                    q[0][2] = -focus.v.clone();
                    q[2][0] = -focus.v.clone();
                    sys.forms.push(q);
                    sys.needs_focus = true;
                }
                Constraint::OrthogonalTo { cycle, ctx } => sys.rows.push(pairing_functional(cycle, ctx)),
                Constraint::Linear { coefficients } => sys.rows.push(coefficients.clone()),
                Constraint::NormalisedK => sys.normalised = true,
            }
        }
        sys
    }
}

/// Basis `(b0, b1)` of a one-parameter pencil cut out by linear constraints.
pub(crate) fn pencil_basis<S: Scalar>(constraints: &[Constraint<S>]) -> Result<(Vec4<S>, Vec4<S>)> {
    let sys = System::collect(constraints);
    let mut basis = nullspace(&sys.rows);
    match basis.len() {
        0 | 1 => Err(Error::Inconsistent(format!("the conditions leave a {}-dimensional solution space", basis.len()))),
        2 => {
            let b1 = basis.pop().expect("two vectors");
            let b0 = basis.pop().expect("two vectors");
            Ok((b0, b1))
        }
        _ => Err(Error::UnderDetermined),
    }
}

/// All quadruples satisfying every constraint, ordered lexicographically
/// after normalising by the first non-zero of `k`, `l`, `n`, `m`.
pub fn cycle_from_constraints<S: Scalar>(constraints: &[Constraint<S>]) -> Result<Vec<CycleQuadruple<S>>> {
    let System { rows, forms, normalised, needs_focus } = System::collect(constraints);

    let basis = nullspace(&rows);
    let candidates: Vec<Vec4<S>> = match (basis.len(), forms.is_empty()) {
        (0, _) => return Err(Error::Inconsistent("only the zero quadruple satisfies the linear conditions".into())),
        (1, _) => {
            let b = &basis[0];
            let scale = one_if_zero(max_abs(&b.iter().collect::<Vec<_>>()));
            let scale = scale.clone() * scale;
            if forms.iter().all(|q| bilinear(q, b, b).near_zero(&scale)) {
                vec![b.clone()]
            } else {
                Vec::new()
            }
        }
        (_, true) => return Err(Error::UnderDetermined),
        (2, false) => {
            let (b0, b1) = (&basis[0], &basis[1]);
            let restricted: Vec<(S, S, S)> =
                forms.iter().map(|q| (bilinear(q, b0, b0), bilinear(q, b0, b1), bilinear(q, b1, b1))).collect();
            let lead = restricted.iter().find(|(a, b, c)| {
                let s = one_if_zero(max_abs(&[a, b, c]));
                !(a.near_zero(&s) && b.near_zero(&s) && c.near_zero(&s))
            });
            let Some((a, b, c)) = lead else { return Err(Error::UnderDetermined) };
            let mut out = Vec::new();
            for (t0, t1) in binary_roots(a, b, c)? {
                let x = combine(&t0, b0, &t1, b1);
                let scale = one_if_zero(max_abs(&x.iter().collect::<Vec<_>>()));
                let scale = scale.clone() * scale;
                if forms.iter().all(|q| bilinear(q, &x, &x).near_zero(&scale)) {
                    out.push(x);
                }
            }
            out
        }
        (d, false) if forms.len() < d - 1 => return Err(Error::UnderDetermined),
        (d, false) => {
            return Err(Error::Unsupported(format!(
                "{} quadratic conditions on a {}-dimensional family",
                forms.len(),
                d - 1
            )))
        }
    };

    let mut out: Vec<CycleQuadruple<S>> = Vec::new();
    for x in candidates {
        let scale = one_if_zero(max_abs(&x.iter().collect::<Vec<_>>()));
        let Ok(c) = CycleQuadruple::from_components(x) else { continue };
        if (normalised || needs_focus) && c.k.near_zero(&scale) {
            continue;
        }
        if needs_focus && c.n.near_zero(&scale) {
            continue;
        }
        let c = if normalised {
            let mut c = c.scale(&(S::one() / c.k.clone()));
            c.k = S::one();
            c
        } else {
            c.canonical()
        };
        if !out.iter().any(|o| o.projective_eq(&c)) {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(Error::Inconsistent("no real cycle satisfies every condition".into()));
    }
    out.sort_by(lex_cmp);
    Ok(out)
}
