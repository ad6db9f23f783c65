//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p cyclekit-cli --test acceptance`. The process exits
//! non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use cyclekit::cycle::{cycle_eval, similarity_transform};
use cyclekit::figures::{k_orbit_bases, k_orbit_cycle, render_figure, FigureName, FigureRecipe};
use cyclekit::metric::{
    conformality_ratios, distance_sq, is_perpendicular, is_perpendicular_on_branch, length,
    variational_distance_oracle, Regime,
};
use cyclekit::moebius::iwasawa_decompose;
use cyclekit::relations::{
    ghost_cycle, heaviside, is_orthogonal, is_s_orthogonal, pairing, pairing_functional, s_ghost,
    s_orthogonality_functional,
};
use cyclekit::{
    CycleQuadruple, DirectedInterval, Exact, FsccContext, GroupElement, LengthKind, Point, PointOrInfinity, Scalar,
    SpaceSign,
};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const E: SpaceSign = SpaceSign::Elliptic;
const P: SpaceSign = SpaceSign::Parabolic;
const H: SpaceSign = SpaceSign::Hyperbolic;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ctx(sc: SpaceSign, s: i8) -> FsccContext {
    FsccContext::new(sc, s).expect("s is ±1")
}

fn rq(r: &mut ChaCha8Rng) -> Exact {
    Exact::ratio(r.gen_range(-9..=9), r.gen_range(1..=6))
}

fn rq_nonzero(r: &mut ChaCha8Rng) -> Exact {
    loop {
        let x = rq(r);
        if !x.is_zero() {
            return x;
        }
    }
}

fn rpoint(r: &mut ChaCha8Rng) -> Point<Exact> {
    Point::new(rq(r), rq(r))
}

fn rcycle(r: &mut ChaCha8Rng) -> CycleQuadruple<Exact> {
    loop {
        if let Ok(c) = CycleQuadruple::new(rq(r), rq(r), rq(r), rq(r)) {
            return c;
        }
    }
}

/// A rational matrix of determinant one: `d = (1 + bc)/a`.
fn rgroup(r: &mut ChaCha8Rng) -> GroupElement<Exact> {
    let a = rq_nonzero(r);
    let (b, c) = (rq(r), rq(r));
    let d = (Exact::one() + b.clone() * c.clone()) / a.clone();
    GroupElement::new(a, b, c, d).expect("determinant one")
}

fn rgroup_f64(r: &mut ChaCha8Rng) -> GroupElement<f64> {
    loop {
        let a: f64 = r.gen_range(-3.0..3.0);
        if a.abs() < 0.25 {
            continue;
        }
        let (b, c): (f64, f64) = (r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        if let Ok(g) = GroupElement::new(a, b, c, (1.0 + b * c) / a) {
            return g;
        }
    }
}

fn random_ctx(r: &mut ChaCha8Rng) -> FsccContext {
    let all = FsccContext::all();
    all[r.gen_range(0..all.len())]
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed < limit, || format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

/// `cz + d` is a non-zero zero divisor: the single point at infinity cannot
/// represent the image consistently.
fn hits_zero_divisor(g: &GroupElement<Exact>, z: &PointOrInfinity<Exact>, sigma: SpaceSign) -> bool {
    let Some(p) = z.as_finite() else { return false };
    let w = p.to_hnumber(sigma);
    let den = &w.scale(g.c()) + &cyclekit::HNumber::real(g.d().clone(), sigma);
    den.modsq().is_zero() && !den.is_zero()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let (mut checked, mut resampled, mut infinities) = (0, 0, 0);
    for sigma in SpaceSign::ALL {
        let mut done = 0;
        while done < 1000 {
            let (g1, g2) = (rgroup(&mut r), rgroup(&mut r));
            let z = if r.gen_bool(0.05) { PointOrInfinity::Infinity } else { rpoint(&mut r).into() };
            let g12 = g1.compose(&g2);
            let inner = g2.apply(&z, sigma);
            if hits_zero_divisor(&g2, &z, sigma) || hits_zero_divisor(&g1, &inner, sigma) || hits_zero_divisor(&g12, &z, sigma) {
                resampled += 1;
                continue;
            }
            let lhs = g1.apply(&inner, sigma);
            let rhs = g12.apply(&z, sigma);
            check(lhs == rhs, || format!("σ={sigma}: g1={g1} g2={g2} z={z:?}: {lhs:?} ≠ {rhs:?}"))?;
            infinities += usize::from(z.is_infinity() || lhs.is_infinity());
            done += 1;
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(10), "the homomorphism check")?;
    Ok(format!(
        "{checked} exact triples, {infinities} involving infinity, {resampled} resampled at non-real zero divisors, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let g = rgroup_f64(&mut r);
        let f = iwasawa_decompose(&g).map_err(|e| format!("{g}: {e}"))?;
        check(f.alpha > 0.0, || format!("{g}: α = {}", f.alpha))?;
        let err = f.recompose().max_entry_distance(&g);
        worst = worst.max(err);
        check(err < 1e-12, || format!("{g}: recomposition error {err:e}"))?;
    }
    Ok(format!("1000 matrices, max entry error {worst:.2e}"))
}

/// Up to `count` points of `c` in the σ-plane, from vertical lines `u = const`.
fn sample_points(c: &CycleQuadruple<f64>, sigma: SpaceSign, count: usize) -> Vec<Point<f64>> {
    let sig = f64::from(sigma.value());
    let (k, l, n, m) = (c.k, c.l, c.n, c.m);
    let u0 = if k != 0.0 { l / k } else { 0.0 };
    let width = 2.0 * (1.0 + u0.abs() + (n / k).abs() + (m / k).abs().sqrt());
    let mut found = Vec::new();
    for j in 0..400 {
        let u = u0 - width + 2.0 * width * (j as f64 + 0.5) / 400.0;
        // -kσ v² - 2n v + (ku² - 2lu + m) = 0
        let (a, b, cc) = (-k * sig, -2.0 * n, k * u * u - 2.0 * l * u + m);
        if a == 0.0 {
            if b != 0.0 {
                found.push(Point::new(u, -cc / b));
            }
            continue;
        }
        let disc = b * b - 4.0 * a * cc;
        if disc >= 0.0 {
            let root = disc.sqrt();
            found.push(Point::new(u, (-b + root) / (2.0 * a)));
            found.push(Point::new(u, (-b - root) / (2.0 * a)));
        }
    }
    if found.len() < count {
        return found;
    }
    let stride = found.len() / count;
    found.into_iter().step_by(stride).take(count).collect()
}

fn residual(c: &CycleQuadruple<f64>, p: &Point<f64>, sigma: SpaceSign) -> f64 {
    let scale = c.max_component() * (1.0 + p.u * p.u + p.v * p.v);
    c.eval(p, sigma).abs() / scale
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let (mut worst, mut points, mut at_infinity) = (0.0f64, 0, 0);
    let mut case = 0;
    while case < 200 {
        let sigma = SpaceSign::ALL[case % 3];
        let (g, c, cx) = (rgroup(&mut r), rcycle(&mut r), random_ctx(&mut r));
        if c.k.is_zero() {
            continue;
        }
        let samples = sample_points(&c.to_f64(), sigma, 20);
        if samples.len() < 20 {
            continue;
        }
        let image = similarity_transform(&c, &g, &cx);
        check(image.det(&cx) == c.det(&cx), || format!("det changed for {c} under {g} in {cx:?}"))?;
        check(image.trace_part(&cx) == c.trace_part(&cx), || format!("trace changed for {c} under {g} in {cx:?}"))?;
        let (gf, imf) = (g.to_f64(), image.to_f64());
        for p in samples {
            match gf.apply(&p.into(), sigma) {
                PointOrInfinity::Finite(q) => {
                    let res = residual(&imf, &q, sigma);
                    worst = worst.max(res);
                    check(res < 1e-9, || format!("σ={sigma}, {c} under {g}: residual {res:e} at {q}"))?;
                    points += 1;
                }
                PointOrInfinity::Infinity => at_infinity += 1,
            }
        }
        case += 1;
    }
    Ok(format!("200 exact (g, C), {points} sampled images, max residual {worst:.2e}, {at_infinity} sent to infinity"))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    for _ in 0..200 {
        let (g, c) = (rgroup(&mut r), rcycle(&mut r));
        let images: Vec<_> = FsccContext::all().iter().map(|cx| similarity_transform(&c, &g, cx)).collect();
        for (cx, img) in FsccContext::all().iter().zip(&images) {
            check(img.projective_eq(&images[0]), || format!("{c} under {g}: {img} in {cx:?} vs {}", images[0]))?;
        }
    }
    Ok("200 exact (g, C), six contexts each, projectively equal".into())
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let ec = ctx(E, 1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (x1, y1) = (rq(&mut r), rq(&mut r));
        let r1 = Exact::ratio(r.gen_range(1..=9), r.gen_range(1..=3));
        let t = rq(&mut r);
        let den = Exact::one() + t.clone() * t.clone();
        let cos = (Exact::one() - t.clone() * t.clone()) / den.clone();
        let sin = Exact::int(2) * t.clone() / den;
        let p = Point::new(x1.clone() + r1.clone() * cos.clone(), y1.clone() + r1.clone() * sin.clone());
        let s = rq_nonzero(&mut r);
        let (x2, y2) = (p.u.clone() - s.clone() * sin, p.v.clone() + s.clone() * cos);
        let circle = |x: &Exact, y: &Exact, rr: Exact| {
            let m = x.clone() * x.clone() + y.clone() * y.clone() - rr;
            CycleQuadruple::new(Exact::one(), x.clone(), y.clone(), m).expect("k = 1")
        };
        let c1 = circle(&x1, &y1, r1.clone() * r1.clone());
        let c2 = circle(&x2, &y2, s.clone() * s.clone());
        check(is_orthogonal(&c1, &c2, &ec), || format!("{c1} and {c2} are not orthogonal"))?;

        let f = |x: &Exact| x.to_f64_lossy();
        let (a, b) = ((f(&x1), f(&y1)), (f(&x2), f(&y2)));
        let (ra, rb) = (f(&r1), f(&s).abs());
        let d = (b.0 - a.0).hypot(b.1 - a.1);
        let along = (ra * ra - rb * rb + d * d) / (2.0 * d);
        let h = (ra * ra - along * along).max(0.0).sqrt();
        let (ex, ey) = ((b.0 - a.0) / d, (b.1 - a.1) / d);
        let foot = (a.0 + along * ex, a.1 + along * ey);
        for sign in [1.0, -1.0] {
            let x = (foot.0 - sign * h * ey, foot.1 + sign * h * ex);
            // tangents are the radii turned by a right angle, so their dot product is the radii's
            let (t1, t2) = ((x.0 - a.0, x.1 - a.1), (x.0 - b.0, x.1 - b.1));
            let dot = (t1.0 * t2.0 + t1.1 * t2.1) / (t1.0.hypot(t1.1) * t2.0.hypot(t2.1));
            worst = worst.max(dot.abs());
            check(dot.abs() < 1e-9, || format!("{c1}, {c2}: tangent dot product {dot:e} at {x:?}"))?;
        }
    }
    Ok(format!("100 constructed pairs, 200 intersections, max |cos| {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut r = rng(6);
    for sigma in SpaceSign::ALL {
        for sc in SpaceSign::ALL {
            let chi = heaviside(sigma).as_space_sign();
            for _ in 0..500 {
                let (c, x) = (rcycle(&mut r), rcycle(&mut r));
                let g = ghost_cycle(&c, sigma, sc);
                let (lhs, rhs) = (pairing(&c, &x, &ctx(sc, 1)), pairing(&g, &x, &ctx(chi, 1)));
                check(lhs == rhs, || format!("σ={sigma} σ̆={sc}: C={c} X={x}: {lhs} ≠ {rhs}"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(20), "the ghost identity")?;
    Ok(format!("9 × 500 exact pairs, {:.2?}", start.elapsed()))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    for sc in SpaceSign::ALL {
        let cx = ctx(sc, 1);
        for _ in 0..500 {
            let w = rpoint(&mut r);
            let z = CycleQuadruple::zero_radius(&w, &cx);
            check(z.det(&cx).is_zero(), || format!("det of {z} is {}", z.det(&cx)))?;
            check(pairing(&z, &z, &cx).is_zero(), || format!("{z} is not self-orthogonal"))?;
            let c = rcycle(&mut r);
            let centre = z.centre(sc);
            let centre = centre.as_finite().expect("k = 1");
            let lhs = pairing(&c, &z, &cx);
            let rhs = -cycle_eval(&c, centre, sc);
            check(lhs == rhs, || format!("σ̆={sc}: ⟨{c}, {z}⟩ = {lhs}, -C({centre}) = {rhs}"))?;
        }
    }
    Ok("3 × 500 exact zero-radius cycles".into())
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let two = Exact::int(2);
    for _ in 0..100 {
        let (k, l, n, m) = (rq_nonzero(&mut r), rq(&mut r), rq_nonzero(&mut r), rq(&mut r));
        let c = CycleQuadruple::new(k.clone(), l.clone(), n.clone(), m.clone()).expect("k ≠ 0");
        let u0 = l.clone() / k.clone();
        let v0 = (m * k.clone() - l.clone() * l) / (two.clone() * n.clone() * k.clone());
        let half = n / (two.clone() * k);
        for (sc, v) in [(P, v0.clone()), (H, v0.clone() + half.clone()), (E, v0.clone() - half.clone())] {
            let want = Point::new(u0.clone(), v);
            let got = c.focus(sc).map_err(|e| format!("{c}: {e}"))?;
            check(got == want, || format!("{sc}-focus of {c}: {got} ≠ {want}"))?;
        }
    }
    Ok("100 exact parabolas: vertex, focus and directrix point".into())
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let c = CycleQuadruple::<Exact>::from_ints(1, 0, 1, 0).expect("non-zero");
    let ec = ctx(E, 1);
    let mut slopes = Vec::new();
    while slopes.len() < 50 {
        let s = rq(&mut r);
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }
    for slope in &slopes {
        let line = |m: Exact| CycleQuadruple::new(Exact::zero(), slope.clone(), Exact::one(), m).expect("n = 1");
        check(is_s_orthogonal(&c, &line(-Exact::one()), &ec), || format!("slope {slope}, m̃ = -1 is not s-orthogonal"))?;
        for _ in 0..4 {
            let m = rq(&mut r);
            let expected = m == -Exact::one();
            check(is_s_orthogonal(&c, &line(m.clone()), &ec) == expected, || format!("slope {slope}, m̃ = {m}"))?;
        }
    }
    let g = s_ghost(&c, E, E).map_err(|e| e.to_string())?;
    let want = CycleQuadruple::<Exact>::from_ints(-2, 0, 1, 0).expect("non-zero");
    check(g.projective_eq(&want), || format!("s-ghost of {c} is {g}"))?;

    let mut done = 0;
    while done < 200 {
        let x = rcycle(&mut r);
        if x.n.is_zero() {
            continue;
        }
        let sc = if done % 2 == 0 { E } else { H };
        let sigma = SpaceSign::ALL[done % 3];
        let g = s_ghost(&x, sigma, sc).map_err(|e| e.to_string())?;
        check(g.roots().ok() == x.roots().ok(), || format!("roots of {x} and its s-ghost {g} differ"))?;
        done += 1;
    }
    Ok("50 slopes, s-ghost (-2,0,1,0), 200 root sets".into())
}

/// A random `X` on the hyperplane `f·X = 0`, or a random cycle when `on` is false.
fn cycle_on(f: &[Exact; 4], on: bool, r: &mut ChaCha8Rng) -> CycleQuadruple<Exact> {
    loop {
        let mut x = [rq(r), rq(r), rq(r), rq(r)];
        if on {
            if let Some(i) = (0..4).find(|&i| !f[i].is_zero()) {
                let rest = (0..4).filter(|&j| j != i).fold(Exact::zero(), |acc, j| acc + f[j].clone() * x[j].clone());
                x[i] = -rest / f[i].clone();
            }
        }
        if let Ok(c) = CycleQuadruple::from_components(x) {
            return c;
        }
    }
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let (mut ortho_true, mut s_true) = (0, 0);
    for i in 0..100 {
        let (c, g) = (rcycle(&mut r), rgroup(&mut r));

        let cx = random_ctx(&mut r);
        let x = cycle_on(&pairing_functional(&c, &cx), i % 2 == 0, &mut r);
        let before = is_orthogonal(&c, &x, &cx);
        let after = is_orthogonal(&similarity_transform(&c, &g, &cx), &similarity_transform(&x, &g, &cx), &cx);
        check(before == after, || format!("orthogonality of {c}, {x} changed under {g} in {cx:?}"))?;
        ortho_true += usize::from(before);

        let cx = ctx(if i % 4 < 2 { E } else { H }, if r.gen_bool(0.5) { 1 } else { -1 });
        let x = cycle_on(&s_orthogonality_functional(&c, &cx), i % 2 == 0, &mut r);
        let before = is_s_orthogonal(&c, &x, &cx);
        let after = is_s_orthogonal(&similarity_transform(&c, &g, &cx), &similarity_transform(&x, &g, &cx), &cx);
        check(before == after, || format!("s-orthogonality of {c}, {x} changed under {g} in {cx:?}"))?;
        s_true += usize::from(before);
    }
    Ok(format!("100 transforms: {ortho_true} orthogonal and {s_true} s-orthogonal pairs kept, the rest stayed false"))
}

fn criterion_11() -> Outcome {
    let mut r = rng(11);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = Point::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let b = Point::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let oracle = variational_distance_oracle(&a, &b, E, E).map_err(|e| e.to_string())?;
        check(oracle.regime == Regime::Supported, || "elliptic oracle flagged experimental".into())?;
        let d = distance_sq(&a, &b, E);
        let rel = (oracle.value - d).abs() / d.max(1e-300);
        worst = worst.max(rel);
        check(rel < 1e-6, || format!("{a} → {b}: oracle {} vs {d}", oracle.value))?;
    }
    for i in 0..500 {
        let sigma = if i % 2 == 0 { E } else { H };
        let iv = DirectedInterval::new(rpoint(&mut r), rpoint(&mut r));
        let got = length(&iv, LengthKind::FromCentre(sigma, sigma)).map_err(|e| format!("{iv:?}: {e}"))?;
        let want = distance_sq(&iv.a, &iv.b, sigma);
        check(got == vec![want.clone()], || format!("σ={sigma}: l_c{iv:?} = {got:?}, d² = {want}"))?;
    }
    Ok(format!("oracle max relative error {worst:.2e} over 100 pairs; l_c = d² on 500 exact pairs"))
}

fn spread(ratios: &[f64]) -> f64 {
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / max.abs().max(min.abs())
}

fn criterion_12() -> Outcome {
    let mut r = rng(12);
    let kinds = [
        LengthKind::Distance(E),
        LengthKind::Distance(P),
        LengthKind::Distance(H),
        LengthKind::FromCentre(E, E),
        LengthKind::FromCentre(H, H),
    ];
    let mut worst: BTreeMap<String, f64> = BTreeMap::new();
    let (mut resampled, mut near_pole) = (0, 0);
    for kind in kinds {
        let sigma = match kind {
            LengthKind::Distance(s) | LengthKind::FromCentre(s, _) | LengthKind::FromFocus(s, _) => s,
        };
        let sig = f64::from(sigma.value());
        let mut done = 0;
        while done < 50 {
            let g = rgroup_f64(&mut r);
            let y = Point::new(r.gen_range(-2.0..2.0), r.gen_range(0.5..2.0));
            // the finite-t error grows like t·|c|·|cy + d|/|cy + d|²_σ, so y keeps
            // away from the singular set of g in the σ-modulus
            let den = &y.to_hnumber(sigma).scale(g.c()) + &cyclekit::HNumber::real(*g.d(), sigma);
            let euclid = den.re * den.re + den.im * den.im;
            if den.modsq().abs() < 1.0f64.max(0.25 * euclid) {
                near_pole += 1;
                continue;
            }
            let mut dirs = Vec::new();
            while dirs.len() < 5 {
                let phi: f64 = r.gen_range(0.0..PI);
                let (du, dv) = (phi.cos(), phi.sin());
                // keep away from the null directions of u² - σv²
                if (du * du - sig * dv * dv).abs() > 0.1 {
                    dirs.push((du, dv));
                }
            }
            let Ok(ratios) = conformality_ratios(&g, &y, &dirs, 1e-4, kind) else {
                resampled += 1;
                continue;
            };
            let s = spread(&ratios);
            let w = worst.entry(format!("{kind:?}")).or_insert(0.0);
            *w = w.max(s);
            check(s < 1e-3, || format!("{kind:?}, g={g}, y={y}: ratios {ratios:?}"))?;
            done += 1;
        }
    }
    let summary: Vec<String> = worst.iter().map(|(k, v)| format!("{k} {v:.1e}")).collect();
    Ok(format!(
        "50 (g, y) × 5 directions per kind, max spread: {}; {near_pole} draws of y near the singular set of g and {resampled} zero-divisor images resampled; FromCentre(P, P) is undefined off the real axis",
        summary.join(", ")
    ))
}

fn criterion_13() -> Outcome {
    let mut r = rng(13);
    let mut agreements = 0;
    for i in 0..50 {
        let a = Point::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let b = Point::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let ab = (b.u - a.u, b.v - a.v);
        let cd = if i % 2 == 0 {
            let lambda: f64 = r.gen_range(0.5..2.0);
            (-ab.1 * lambda, ab.0 * lambda)
        } else {
            (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))
        };
        let dot = ab.0 * cd.0 + ab.1 * cd.1;
        let expected = dot.abs() < 1e-9 * ab.0.hypot(ab.1) * cd.0.hypot(cd.1);
        let got = is_perpendicular(&DirectedInterval::new(a.clone(), b.clone()), cd, LengthKind::Distance(E))
            .map_err(|e| e.to_string())?;
        check(got == expected, || format!("{a} → {b} along {cd:?}: perpendicular {got}, dot {dot:e}"))?;
        agreements += 1;
    }

    // C = (1,0,1,0) has e-focus F = (0,-1/2). For B on C and A on the axis u = 0,
    // the line AB is s-orthogonal to C exactly when A = F, and A → B is then
    // l_f-perpendicular to the tangent of C at B.
    let c = CycleQuadruple::<Exact>::from_ints(1, 0, 1, 0).expect("non-zero");
    let ec = ctx(E, 1);
    let focus = Point::new(Exact::zero(), Exact::ratio(-1, 2));
    let kind = LengthKind::FromFocus(E, E);
    let (mut configs, mut through_focus, mut skipped) = (0, 0, 0);
    while configs < 50 {
        let t = rq_nonzero(&mut r);
        let den = Exact::one() + t.clone() * t.clone();
        let b = Point::new(Exact::int(2) * t.clone() / den.clone(), Exact::int(2) * t.clone() * t / den);
        let a = if configs % 2 == 0 { focus.clone() } else { Point::new(Exact::zero(), rq_nonzero(&mut r)) };
        if a.v == b.v {
            continue;
        }
        // the line through A = (0, a_v) and B: -2lu - 2v + 2a_v = 0
        let l = (a.v.clone() - b.v.clone()) / b.u.clone();
        let line = CycleQuadruple::new(Exact::zero(), l, Exact::one(), Exact::int(2) * a.v.clone()).expect("n = 1");
        check(line.passes_through(&a.clone().into(), E) && line.passes_through(&b.clone().into(), E), || {
            format!("{line} misses {a} or {b}")
        })?;
        let s_verdict = is_s_orthogonal(&c, &line, &ec);

        let (af, bf) = (Point::new(a.u.to_f64_lossy(), a.v.to_f64_lossy()), Point::new(b.u.to_f64_lossy(), b.v.to_f64_lossy()));
        let iv = DirectedInterval::new(af, bf.clone());
        let tangent = (1.0 - bf.v, bf.u);
        let Ok(branches) = length(&iv, kind) else {
            skipped += 1;
            continue;
        };
        // nearly coincident branches defeat the finite differences
        let close = branches.windows(2).any(|w| (w[1] - w[0]).abs() < 1e-2 * w[1].abs().max(1.0));
        let verdicts: Result<Vec<bool>, _> =
            (0..branches.len()).map(|i| is_perpendicular_on_branch(&iv, tangent, kind, i)).collect();
        let (false, Ok(verdicts)) = (close, verdicts) else {
            skipped += 1;
            continue;
        };
        let p_verdict = verdicts.iter().any(|v| *v);
        check(p_verdict == s_verdict, || {
            format!("A={a}, B={b}: s-orthogonal {s_verdict}, perpendicular {p_verdict} on branches {branches:?}")
        })?;
        through_focus += usize::from(s_verdict);
        configs += 1;
    }
    Ok(format!(
        "{agreements} Distance(E) cases; 50 focal configurations ({through_focus} through the focus) agree, {skipped} skipped at near-coincident or unstable branches"
    ))
}

fn attr(node: roxmltree::Node, name: &str) -> Result<f64, String> {
    node.attribute(name)
        .ok_or_else(|| format!("missing {name}"))?
        .parse()
        .map_err(|e| format!("{name}: {e}"))
}

fn well_formed(name: &str, svg: &str) -> Result<(), String> {
    let doc = roxmltree::Document::parse(svg).map_err(|e| format!("{name}: {e}"))?;
    let root = doc.root_element();
    check(root.tag_name().name() == "svg", || format!("{name}: root is {:?}", root.tag_name()))?;
    check(root.attribute("version") == Some("1.1"), || format!("{name}: not SVG 1.1"))?;
    for required in ["viewBox", "width", "height"] {
        check(root.attribute(required).is_some(), || format!("{name}: missing {required}"))?;
    }
    Ok(())
}

fn polyline_points(node: roxmltree::Node) -> Result<Vec<(f64, f64)>, String> {
    let text = node.attribute("points").ok_or("polyline without points")?;
    text.split_whitespace()
        .map(|pair| {
            let (x, y) = pair.split_once(',').ok_or_else(|| format!("bad pair {pair}"))?;
            let x: f64 = x.parse().map_err(|e| format!("{pair}: {e}"))?;
            let y: f64 = y.parse().map_err(|e| format!("{pair}: {e}"))?;
            Ok((x, -y))
        })
        .collect()
}

fn k_orbit_residuals(panels: &BTreeMap<String, String>) -> Result<(usize, f64), String> {
    let (mut count, mut worst) = (0, 0.0f64);
    for sigma in SpaceSign::ALL {
        let name = format!("fig-k-orbits-{}.svg", sigma.letter());
        let svg = panels.get(&name).ok_or_else(|| format!("{name} missing"))?;
        let doc = roxmltree::Document::parse(svg).map_err(|e| e.to_string())?;
        let orbits: Vec<CycleQuadruple<f64>> = k_orbit_bases().iter().map(|v0| k_orbit_cycle(v0, sigma).to_f64()).collect();
        for node in doc.descendants().filter(|n| n.has_tag_name("polyline")) {
            let Some(class) = node.attribute("class") else { continue };
            let Some(index) = class.strip_prefix("orbit-").and_then(|rest| rest.split(' ').next()) else { continue };
            let orbit = &orbits[index.parse::<usize>().map_err(|e| e.to_string())?];
            for (u, v) in polyline_points(node)? {
                let res = orbit.eval(&Point::new(u, v), sigma).abs();
                worst = worst.max(res);
                check(res < 1e-9, || format!("{name}: ({u}, {v}) is {res:e} off {orbit}"))?;
                count += 1;
            }
        }
    }
    check(count > 0, || "no orbit points found".into())?;
    Ok((count, worst))
}

/// Smallest `|y|` reached by the path pieces `M x0 y0 Q x1 y1 x2 y2`.
fn bezier_min_abs_y(d: &str) -> Result<f64, String> {
    let nums: Vec<f64> = d
        .split_whitespace()
        .filter(|t| *t != "M" && *t != "Q")
        .map(|t| t.parse::<f64>().map_err(|e| format!("{d}: {e}")))
        .collect::<Result<_, _>>()?;
    check(nums.len() == 6, || format!("unexpected path {d}"))?;
    let (y0, y1, y2) = (nums[1], nums[3], nums[5]);
    let at = |t: f64| (1.0 - t) * (1.0 - t) * y0 + 2.0 * t * (1.0 - t) * y1 + t * t * y2;
    let mut best = y0.abs().min(y2.abs());
    let curvature = y0 - 2.0 * y1 + y2;
    if curvature != 0.0 {
        let t = (y0 - y1) / curvature;
        if (0.0..=1.0).contains(&t) {
            best = best.min(at(t).abs());
        }
    }
    Ok(best)
}

fn p_row_tangency(panels: &BTreeMap<String, String>) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for sigma in SpaceSign::ALL {
        let name = format!("fig-zero-radius-p-{}.svg", sigma.letter());
        let svg = panels.get(&name).ok_or_else(|| format!("{name} missing"))?;
        let doc = roxmltree::Document::parse(svg).map_err(|e| e.to_string())?;
        let mut current: Option<CycleQuadruple<Exact>> = None;
        let mut seen = 0;
        for node in doc.root_element().children() {
            if node.is_comment() {
                let text = node.text().unwrap_or_default();
                if let Some(rest) = text.trim().strip_prefix("zero-radius cycle (") {
                    let quad = rest.split(')').next().unwrap_or_default().replace(' ', "");
                    let c = CycleQuadruple::<Exact>::parse_text(&quad).map_err(|e| e.to_string())?;
                    // the cycle meets v = 0 where ku² - 2lu + m = 0, a double root when l² = km
                    let disc = c.l.clone() * c.l.clone() - c.k.clone() * c.m.clone();
                    check(disc.is_zero(), || format!("{name}: {c} crosses the real axis"))?;
                    current = Some(c);
                    seen += 1;
                }
                continue;
            }
            let Some(c) = &current else { continue };
            let gap = match node.tag_name().name() {
                "circle" if node.attribute("class") != Some("dot") => {
                    let (cy, r) = (attr(node, "cy")?, attr(node, "r")?);
                    (cy.abs() - r).abs()
                }
                "path" => bezier_min_abs_y(node.attribute("d").unwrap_or_default())?,
                _ => continue,
            };
            worst = worst.max(gap);
            check(gap < 1e-9, || format!("{name}: {c} stays {gap:e} away from the real axis"))?;
        }
        check(seen == 3, || format!("{name}: found {seen} zero-radius cycles"))?;
    }
    Ok(worst)
}

fn criterion_14() -> Outcome {
    let mut panels = BTreeMap::new();
    for name in FigureName::ALL {
        let recipe = FigureRecipe::new(name);
        let first = render_figure(&recipe).map_err(|e| format!("{}: {e}", name.as_str()))?;
        let second = render_figure(&recipe).map_err(|e| format!("{}: {e}", name.as_str()))?;
        check(first.len() == second.len(), || format!("{}: panel count changed", name.as_str()))?;
        for (a, b) in first.iter().zip(&second) {
            check(a.file_name == b.file_name && a.svg == b.svg, || format!("{} is not deterministic", a.file_name))?;
            well_formed(&a.file_name, &a.svg)?;
            panels.insert(a.file_name.clone(), a.svg.clone());
        }
    }

    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    for name in FigureName::ALL {
        let status = Command::new(env!("CARGO_BIN_EXE_cyclekit"))
            .args(["figure", name.as_str(), "--out"])
            .arg(out.path())
            .output()
            .map_err(|e| e.to_string())?;
        check(status.status.success(), || format!("figure {} failed: {}", name.as_str(), String::from_utf8_lossy(&status.stderr)))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30), "the figure command")?;
    for (file, svg) in &panels {
        let written = std::fs::read_to_string(out.path().join(file)).map_err(|e| format!("{file}: {e}"))?;
        check(&written == svg, || format!("{file}: CLI output differs from the library rendering"))?;
    }

    let (orbit_points, orbit_worst) = k_orbit_residuals(&panels)?;
    let tangency = p_row_tangency(&panels)?;
    Ok(format!(
        "{} panels well-formed and byte-stable; {orbit_points} orbit points, max residual {orbit_worst:.1e}; p-row tangency gap {tangency:.1e}; CLI run {elapsed:.2?}",
        panels.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("group action homomorphism", criterion_1),
        ("Iwasawa decomposition", criterion_2),
        ("FSCc intertwining", criterion_3),
        ("context independence", criterion_4),
        ("orthogonality is geometric", criterion_5),
        ("ghost identity", criterion_6),
        ("zero-radius laws", criterion_7),
        ("parabola foci anchors", criterion_8),
        ("s-orthogonality focus law", criterion_9),
        ("Möbius invariance of both relations", criterion_10),
        ("distance", criterion_11),
        ("conformality", criterion_12),
        ("perpendicularity", criterion_13),
        ("figures", criterion_14),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

