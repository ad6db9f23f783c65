use std::path::Path;

use cyclekit::figures::{render_svg, run_figure, CycleSetDocument, FigureRecipe};
use cyclekit::metric::{conformality_ratios, distance_sq, is_perpendicular, length};
use cyclekit::moebius::k_orbit;
use cyclekit::relations::{
    ghost_cycle, invert_cycle, invert_point, is_orthogonal, pairing, s_ghost, s_orthogonality,
};
use cyclekit::scalar::parse_list;
use cyclekit::{
    CycleQuadruple, DirectedInterval, Exact, FsccContext, GroupElement, LengthKind, NumericMode, Point,
    PointOrInfinity, Scalar, SpaceSign,
};
use serde_json::{json, Value};

use crate::{Command, Failure, Kind, LengthArgs, Relation};

type Outcome = Result<(), Failure>;

fn usage(e: cyclekit::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn cycle<S: Scalar>(text: &str) -> Result<CycleQuadruple<S>, Failure> {
    CycleQuadruple::parse_text(text).map_err(usage)
}

fn point<S: Scalar>(text: &str) -> Result<Point<S>, Failure> {
    Point::parse_text(text).map_err(usage)
}

fn group<S: Scalar>(text: &str) -> Result<GroupElement<S>, Failure> {
    let v = parse_list::<S>(text, 4).map_err(usage)?;
    let [a, b, c, d]: [S; 4] = v.try_into().expect("four values");
    Ok(GroupElement::new(a, b, c, d)?)
}

fn context(sigma_cycle: SpaceSign, s: i8) -> Result<FsccContext, Failure> {
    FsccContext::new(sigma_cycle, s).map_err(usage)
}

fn scalar_json<S: Scalar>(x: &S) -> Value {
    let text = x.to_text();
    match serde_json::from_str::<Value>(&text) {
        Ok(v @ Value::Number(_)) => v,
        _ => Value::String(text),
    }
}

fn cycle_text<S: Scalar>(c: &CycleQuadruple<S>) -> String {
    c.components().iter().map(|x| x.to_text()).collect::<Vec<_>>().join(",")
}

fn point_text<S: Scalar>(p: &PointOrInfinity<S>) -> String {
    match p {
        PointOrInfinity::Finite(p) => format!("{},{}", p.u.to_text(), p.v.to_text()),
        PointOrInfinity::Infinity => "inf".into(),
    }
}

fn cycle_json<S: Scalar>(c: &CycleQuadruple<S>) -> Value {
    Value::Array(c.components().iter().map(|x| scalar_json(*x)).collect())
}

fn predicate(holds: bool, report: Value) -> Outcome {
    println!("{report}");
    if holds {
        Ok(())
    } else {
        Err(Failure::False)
    }
}

fn length_kind(k: &LengthArgs) -> LengthKind {
    let sc = k.sigma_cycle.unwrap_or(k.sigma);
    match k.kind {
        Kind::Distance => LengthKind::Distance(k.sigma),
        Kind::Centre => LengthKind::FromCentre(k.sigma, sc),
        Kind::Focus => LengthKind::FromFocus(k.sigma, sc),
    }
}

fn read_document<S: Scalar>(path: &Path) -> Result<CycleSetDocument<S>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    CycleSetDocument::from_json(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

pub fn run(cmd: &Command, mode: NumericMode) -> Outcome {
    match cmd {
        Command::Perp { kind, a, b, dir } => perp(kind, a, b, dir),
        Command::Conformal { kind, g, y, dirs, t } => conformal(kind, g, y, dirs, *t),
        Command::Figure { name, out, params } => {
            let recipe = FigureRecipe::parse(name, params)?;
            for path in run_figure(&recipe, out)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        _ => match mode {
            NumericMode::Exact => run_in::<Exact>(cmd),
            NumericMode::Approx => run_in::<f64>(cmd),
        },
    }
}

fn run_in<S: Scalar>(cmd: &Command) -> Outcome {
    match cmd {
        Command::Draw { sigma, input, out } => {
            let mut doc = read_document::<S>(input)?;
            if let Some(s) = sigma {
                doc.sigma = *s;
            }
            write_file(out, &render_svg(&doc)?)
        }
        Command::Transform { g, sigma_cycle, s, input, out } => {
            let g = group::<S>(g)?;
            let ctx = context(*sigma_cycle, *s)?;
            let mut doc = read_document::<S>(input)?;
            for c in &mut doc.cycles {
                c.cycle = c.cycle.similarity_transform(&g, &ctx);
            }
            let sigma = doc.sigma;
            let mut moved = Vec::new();
            for p in &doc.points {
                match g.apply(&PointOrInfinity::Finite(p.clone()), sigma) {
                    PointOrInfinity::Finite(q) => moved.push(q),
                    PointOrInfinity::Infinity => eprintln!("warning: {p} is sent to infinity and dropped"),
                }
            }
            doc.points = moved;
            write_file(out, &(doc.to_json() + "\n"))
        }
        Command::Check { relation, sigma_cycle, s, c1, c2 } => {
            let ctx = context(*sigma_cycle, *s)?;
            let (c1, c2) = (cycle::<S>(c1)?, cycle::<S>(c2)?);
            match relation {
                Relation::Ortho => {
                    let holds = is_orthogonal(&c1, &c2, &ctx);
                    let report = json!({"relation": "ortho", "holds": holds, "pairing": scalar_json(&pairing(&c1, &c2, &ctx))});
                    predicate(holds, report)
                }
                Relation::Sortho => {
                    let v = s_orthogonality(&c1, &c2, &ctx);
                    if v.degenerate {
                        eprintln!("warning: s-orthogonality is vacuous for σ̆ = 0");
                    }
                    predicate(v.holds, json!({"relation": "sortho", "holds": v.holds, "degenerate": v.degenerate}))
                }
            }
        }
        Command::Ghost { sigma, sigma_cycle, json, cycle: c } => {
            let g = ghost_cycle(&cycle::<S>(c)?, *sigma, *sigma_cycle);
            print_cycle(&g, *json, "ghost");
            Ok(())
        }
        Command::Sghost { sigma, sigma_cycle, json, cycle: c } => {
            let g = s_ghost(&cycle::<S>(c)?, *sigma, *sigma_cycle)?;
            print_cycle(&g, *json, "s_ghost");
            Ok(())
        }
        Command::Invert { sigma_cycle, s, point: p, target, mirror } => {
            let ctx = context(*sigma_cycle, *s)?;
            let mirror = cycle::<S>(mirror)?;
            match (p, target) {
                (Some(p), _) => println!("{}", point_text(&invert_point(&mirror, &point::<S>(p)?, &ctx))),
                (None, Some(c)) => println!("{}", cycle_text(&invert_cycle(&mirror, &cycle::<S>(c)?, &ctx)?)),
                (None, None) => return Err(Failure::Usage("give --point or --cycle".into())),
            }
            Ok(())
        }
        Command::Distance { sigma, a, b } => {
            let d = distance_sq(&point::<S>(a)?, &point::<S>(b)?, *sigma);
            println!("{}", json!({"distance_sq": scalar_json(&d)}));
            Ok(())
        }
        Command::Length { kind, a, b } => {
            let iv = DirectedInterval::new(point::<S>(a)?, point::<S>(b)?);
            let values = length(&iv, length_kind(kind))?;
            println!("{}", json!({"lengths": values.iter().map(scalar_json).collect::<Vec<_>>()}));
            Ok(())
        }
        Command::Orbit { base, sigma, t } => {
            let base = point::<S>(base)?;
            let params = t.split(',').map(S::parse_text).collect::<cyclekit::Result<Vec<S>>>().map_err(usage)?;
            let points: Vec<String> = k_orbit(&base, *sigma, &params).iter().map(point_text).collect();
            let orbit = if base.v.is_zero() {
                CycleQuadruple::<S>::real_line()
            } else {
                let sig: S = sigma.scalar();
                let n = (base.u.clone() * base.u.clone() - sig * base.v.clone() * base.v.clone() + S::one())
                    / (S::int(2) * base.v.clone());
                CycleQuadruple { k: S::one(), l: S::zero(), n, m: S::one() }
            };
            println!("{}", json!({"cycle": cycle_text(&orbit), "points": points}));
            Ok(())
        }
        Command::Perp { .. } | Command::Conformal { .. } | Command::Figure { .. } => unreachable!("handled in run"),
    }
}

fn print_cycle<S: Scalar>(c: &CycleQuadruple<S>, as_json: bool, key: &str) {
    if as_json {
        println!("{}", json!({ key: cycle_json(c) }));
    } else {
        println!("{}", cycle_text(c));
    }
}

fn perp(kind: &LengthArgs, a: &str, b: &str, dir: &str) -> Outcome {
    let iv = DirectedInterval::new(point::<f64>(a)?, point::<f64>(b)?);
    let d = point::<f64>(dir)?;
    let holds = is_perpendicular(&iv, (d.u, d.v), length_kind(kind))?;
    predicate(holds, json!({"perpendicular": holds}))
}

fn conformal(kind: &LengthArgs, g: &str, y: &str, dirs: &str, t: f64) -> Outcome {
    let g = group::<f64>(g)?;
    let y = point::<f64>(y)?;
    let dirs = dirs
        .split(';')
        .map(|d| point::<f64>(d).map(|p| (p.u, p.v)))
        .collect::<Result<Vec<_>, _>>()?;
    if !(t > 0.0) {
        return Err(Failure::Usage(format!("t must be positive, got {t}")));
    }
    let ratios = conformality_ratios(&g, &y, &dirs, t, length_kind(kind))?;
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = (max - min) / max.abs().max(min.abs());
    println!("{}", json!({"ratios": ratios.iter().map(|r| scalar_json(r)).collect::<Vec<_>>(), "spread": scalar_json(&spread)}));
    Ok(())
}
