use std::fmt::Display;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use delpezzo::charge::StabilityPoint;
use delpezzo::fixtures::fixture;
use delpezzo::helix::{dual_collection, left_tilt, quiver_arrows, Concentration, ExcCollection, Helix};
use delpezzo::lattice::{euler_pairing, rational_json, twist_by_line_bundle, AmpleClass, ChernCharacter, NsClass, SurfaceKind};
use delpezzo::notation::{class_literal, parse_class, parse_object, with_shift};
use delpezzo::regions::{
    coverage_check_with, dimension_vector, king_screen, king_weights, region, rotatability_conditions, CoverageBox,
    CoverageConfig, RegionKind,
};
use delpezzo::symkernel::{parse_rational, Rational};
use delpezzo::walls::{classify_fixed_t_conic, wall_in_vertical_plane, wall_quadric, xy_restriction, PlaneSection, VerticalPlane};

mod plot;

/// Exact wall-and-chamber computations on P1xP1 and the blow-up of P2.
#[derive(Parser)]
#[command(name = "delpezzo", version)]
struct Cli {
    /// p1xp1 or blp2.
    #[arg(long, global = true, default_value = "p1xp1")]
    surface: String,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Ample {
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
}

#[derive(Args, Clone)]
struct Point {
    #[command(flatten)]
    h: Ample,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long)]
    t: String,
}

#[derive(Args, Clone)]
struct CollectionInput {
    /// JSON list of objects `{label, rank, c1, ch2, shift}`; `-` reads stdin.
    #[arg(long)]
    collection: Option<String>,
    /// A named collection: E, E', F' (both surfaces), Ehat, E'', F'' (blp2).
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    DegreeOne,
    ExtOneOrTwo,
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    #[value(name = "F'")]
    Prime,
    #[value(name = "F''")]
    DoublePrime,
}

#[derive(Subcommand)]
enum Command {
    /// Euler pairing χ(A, B).
    Chi {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
    },
    /// Chern character of a class literal.
    Ch {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Tensor a class by a line bundle O(p, q).
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// `p,q`.
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Dual collection `(F_n, …, F_1)`.
    Dual {
        #[command(flatten)]
        input: CollectionInput,
    },
    /// Left tilt at the `at`-th object (1-based).
    Tilt {
        #[command(flatten)]
        input: CollectionInput,
        #[arg(long)]
        at: usize,
    },
    /// Quiver of a dual collection.
    Quiver {
        #[command(flatten)]
        input: CollectionInput,
        /// Treat the input as `E` and take its dual first.
        #[arg(long)]
        dual_of: bool,
        #[arg(long, value_enum, default_value = "ext-one-or-two")]
        mode: Mode,
    },
    /// The wall W(v, w).
    Wall {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Classify the horizontal slices.
        #[arg(long)]
        classify: bool,
        /// Print the restriction to t = 0.
        #[arg(long)]
        xy: bool,
        /// Section in the vertical plane along H through `x0,y0`.
        #[arg(long, allow_hyphen_values = true)]
        plane: Option<String>,
        #[command(flatten)]
        h: Ample,
    },
    /// Membership of a point in a quiver region.
    Region {
        #[arg(long, value_enum, default_value = "F'")]
        region: Family,
        /// Translate `p,q`.
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        twist: String,
        #[command(flatten)]
        point: Point,
    },
    /// Cover a grid of the xy-plane by translated quiver regions.
    Cover {
        #[command(flatten)]
        h: Ample,
        /// `xmin,xmax,ymin,ymax`.
        #[arg(long = "box", default_value = "-3,3,-3,3", allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, default_value = "1/4")]
        step: String,
        /// Only try the untranslated regions (negative-path testing).
        #[arg(long, hide = true)]
        broken_region: bool,
    },
    /// Dimension vector of a class in the basis of a dual collection.
    Dimvec {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[command(flatten)]
        input: CollectionInput,
    },
    /// King weights θ_i = Im(conj Z(v)·Z(F_i)).
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[command(flatten)]
        input: CollectionInput,
        #[command(flatten)]
        point: Point,
    },
    /// Sub-dimension vectors with θ·d′ > 0 (a necessary condition only).
    Screen {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[command(flatten)]
        input: CollectionInput,
        #[command(flatten)]
        point: Point,
    },
    /// Render a scene file to SVG on standard output.
    Plot {
        #[arg(long)]
        scene: String,
        /// Grid cells per side for curve sampling.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

enum Failure {
    /// Bad input: exit code 2.
    Input(String),
    /// A property or coverage check failed: exit code 1.
    Property(String),
}

type Outcome = Result<(), Failure>;

fn input<E: Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s.trim()).map_err(input)
}

fn ints(s: &str, n: usize) -> Result<Vec<i64>, Failure> {
    let v = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Failure::Input(format!("`{s}`: expected {n} integers"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(Failure::Input(format!("`{s}`: expected {n} integers")));
    }
    Ok(v)
}

fn rationals(s: &str, n: usize) -> Result<Vec<Rational>, Failure> {
    let v = s.split(',').map(rational).collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(Failure::Input(format!("`{s}`: expected {n} values")));
    }
    Ok(v)
}

struct Ctx {
    surface: SurfaceKind,
    json: bool,
}

impl Ctx {
    fn class(&self, s: &str) -> Result<ChernCharacter, Failure> {
        parse_class(s, self.surface).map_err(input)
    }

    fn ample(&self, h: &Ample) -> Result<AmpleClass, Failure> {
        let (a, b) = match (&h.a, &h.b) {
            (Some(a), Some(b)) => (rational(a)?, rational(b)?),
            _ => {
                let r = self.surface.reference_ample();
                (r.0[0].clone(), r.0[1].clone())
            }
        };
        AmpleClass::new(self.surface, a, b).map_err(input)
    }

    fn point(&self, p: &Point) -> Result<StabilityPoint, Failure> {
        StabilityPoint::new(self.ample(&p.h)?, rational(&p.x)?, rational(&p.y)?, rational(&p.t)?).map_err(input)
    }

    fn collection(&self, c: &CollectionInput) -> Result<ExcCollection, Failure> {
        match (&c.collection, &c.fixture) {
            (Some(path), None) => {
                let text = read_input(path)?;
                let v: Value = serde_json::from_str(&text).map_err(input)?;
                ExcCollection::from_json(&v, self.surface).map_err(input)
            }
            (None, Some(name)) => fixture(self.surface, name).map_err(input),
            _ => Err(Failure::Input("give exactly one of --collection or --fixture".into())),
        }
    }

    fn emit(&self, text: impl Display, value: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
        } else {
            println!("{text}");
        }
    }
}

fn class_json(c: &ChernCharacter) -> Value {
    json!({
        "rank": rational_json(&c.rank_q()),
        "c1": [rational_json(&c.c1.0[0]), rational_json(&c.c1.0[1])],
        "ch2": rational_json(&c.ch2),
    })
}

fn section_text(s: &PlaneSection) -> String {
    match s {
        PlaneSection::Semicircle { center, aspect, radius2 } => {
            format!("semicircle: t^2 + {aspect}*(s - {center})^2 = {radius2}")
        }
        PlaneSection::VerticalLine { s } => format!("vertical line: s = {s}"),
        PlaneSection::Empty => "empty".into(),
        PlaneSection::Other(r) => format!("other: {}*t^2 + {}*s^2 + {}*s + {} = 0", r.k, r.q, r.l, r.c),
    }
}

fn run(cli: Cli) -> Outcome {
    let surface: SurfaceKind = cli.surface.parse().map_err(input)?;
    let ctx = Ctx { surface, json: cli.json };
    match cli.command {
        Command::Chi { a, b } => {
            let chi = euler_pairing(&ctx.class(&a)?, &ctx.class(&b)?).map_err(input)?;
            ctx.emit(&chi, json!({ "chi": rational_json(&chi) }));
        }
        Command::Ch { class } => {
            let obj = parse_object(&class, surface).map_err(input)?;
            let k = obj.k_class();
            ctx.emit(
                format!("rank {}, c1 ({}, {}), ch2 {}", k.rank, k.c1.0[0], k.c1.0[1], k.ch2),
                json!({ "class": class_json(&k), "object": class_json(&obj.cls), "shift": obj.shift }),
            );
        }
        Command::Twist { class, by } => {
            let obj = parse_object(&class, surface).map_err(input)?;
            let pq = ints(&by, 2)?;
            let l = NsClass::ints(pq[0], pq[1]);
            let twisted = twist_by_line_bundle(&obj.cls, &l).map_err(input)?;
            let lit = with_shift(&class_literal(&twisted), obj.shift);
            ctx.emit(&lit, json!({ "literal": lit, "object": class_json(&twisted), "shift": obj.shift }));
        }
        Command::Dual { input: i } => {
            let d = dual_collection(&ctx.collection(&i)?).map_err(input)?;
            ctx.emit(&d, d.to_json());
        }
        Command::Tilt { input: i, at } => {
            let e = ctx.collection(&i)?;
            if at == 0 || at > e.len() {
                return Err(Failure::Input(format!("--at must be between 1 and {}", e.len())));
            }
            let h = Helix::new(e).map_err(input)?;
            let t = left_tilt(&h, at as i64 - 1).map_err(input)?.base;
            ctx.emit(&t, t.to_json());
        }
        Command::Quiver { input: i, dual_of, mode } => {
            let mut c = ctx.collection(&i)?;
            if dual_of {
                c = dual_collection(&c).map_err(input)?;
            }
            let mode = match mode {
                Mode::DegreeOne => Concentration::DegreeOne,
                Mode::ExtOneOrTwo => Concentration::ExtOneOrTwo,
            };
            let q = quiver_arrows(&c, mode).map_err(input)?;
            let mut text = String::new();
            for (i, row) in q.arrows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                text.push_str(&format!("{} {}\n", cells.join(" "), q.labels[i]));
            }
            for (i, row) in q.relations.iter().enumerate() {
                for (j, r) in row.iter().enumerate() {
                    if *r > 0 {
                        text.push_str(&format!("relations {}->{}: {r}\n", i + 1, j + 1));
                    }
                }
            }
            ctx.emit(text.trim_end(), q.to_json());
        }
        Command::Wall { v, w, classify, xy, plane, h } => {
            let wall = wall_quadric(&ctx.class(&v)?, &ctx.class(&w)?).map_err(input)?;
            let mut lines = vec![wall.equation().to_string()];
            let mut out = wall.to_json();
            if classify {
                let c = classify_fixed_t_conic(&wall).map_err(input)?;
                lines.push(c.to_string());
                out["class"] = json!(c.to_string());
            }
            if xy {
                let r = xy_restriction(&wall);
                lines.push(format!("xy: {r}"));
                out["xy"] = json!(r.to_string());
            }
            if let Some(p) = plane {
                let base = rationals(&p, 2)?;
                let h = ctx.ample(&h)?;
                let plane = VerticalPlane::along_h(base[0].clone(), base[1].clone(), &h);
                let s = wall_in_vertical_plane(&wall, &plane, &h).map_err(input)?;
                lines.push(section_text(&s));
                out["plane"] = json!(section_text(&s));
            }
            ctx.emit(lines.join("\n"), out);
        }
        Command::Region { region: fam, twist, point } => {
            let sigma = ctx.point(&point)?;
            let kind = match (surface, fam) {
                (SurfaceKind::P1xP1, Family::Prime) => RegionKind::P1p1,
                (SurfaceKind::BlpP2, Family::Prime) => RegionKind::BlpPrime,
                (SurfaceKind::BlpP2, Family::DoublePrime) => RegionKind::BlpDoublePrime,
                (SurfaceKind::P1xP1, Family::DoublePrime) => {
                    return Err(Failure::Input("F'' is only defined on blp2".into()))
                }
            };
            let pq = ints(&twist, 2)?;
            let spec = region(kind, (pq[0], pq[1])).map_err(input)?;
            let inside = spec.contains(&sigma).map_err(input)?;
            let failed = spec.failed_constraints(&sigma).map_err(input)?;
            let rot = rotatability_conditions(&spec.dual, &sigma).map_err(input)?;
            let mut text = format!("{}: {}", if inside { "inside" } else { "outside" }, spec.dual);
            for f in &failed {
                text.push_str(&format!("\n  fails {f}"));
            }
            for f in &rot.failures {
                text.push_str(&format!("\n  condition {f}"));
            }
            ctx.emit(
                text,
                json!({
                    "inside": inside,
                    "dual": spec.dual.to_json(),
                    "failed": failed,
                    "rotatable": rot.satisfied,
                    "conditions_failed": rot.failures,
                }),
            );
            if !inside {
                return Err(Failure::Property(String::new()));
            }
        }
        Command::Cover { h, bbox, step, broken_region } => {
            let h = ctx.ample(&h)?;
            let b = rationals(&bbox, 4)?;
            let bx = CoverageBox { xmin: b[0].clone(), xmax: b[1].clone(), ymin: b[2].clone(), ymax: b[3].clone() };
            let cfg = CoverageConfig { origin_only: broken_region, ..Default::default() };
            let rep = coverage_check_with(&h, &bx, &rational(&step)?, &cfg).map_err(input)?;
            let total = rep.results.len() + rep.uncovered.len();
            let summary = match rep.uncovered.first() {
                None => format!(
                    "covered: {total}/{total} grid points ({}, H=({},{}), step {})",
                    surface.name(),
                    h.a,
                    h.b,
                    rep.step
                ),
                Some((x, y)) => format!(
                    "NOT COVERED: {} of {total} grid points uncovered, first at ({x}, {y})",
                    rep.uncovered.len()
                ),
            };
            if ctx.json {
                // Keep standard output pure JSON.
                println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("JSON values serialize"));
                eprintln!("{summary}");
            } else {
                println!("{summary}");
            }
            if !rep.covered() {
                return Err(Failure::Property(String::new()));
            }
        }
        Command::Dimvec { class, input: i } => {
            let d = dimension_vector(&ctx.class(&class)?, &ctx.collection(&i)?).map_err(input)?;
            ctx.emit(format!("{:?}", d.0), json!(d.0));
        }
        Command::Theta { class, input: i, point } => {
            let th = king_weights(&ctx.class(&class)?, &ctx.collection(&i)?, &ctx.point(&point)?).map_err(input)?;
            let text: Vec<String> = th.0.iter().map(Rational::to_string).collect();
            ctx.emit(text.join(" "), json!(th.0.iter().map(rational_json).collect::<Vec<_>>()));
        }
        Command::Screen { class, input: i, point } => {
            let v = ctx.class(&class)?;
            let f = ctx.collection(&i)?;
            let d = dimension_vector(&v, &f).map_err(input)?;
            let th = king_weights(&v, &f, &ctx.point(&point)?).map_err(input)?;
            let bad = king_screen(&th, &d).map_err(input)?;
            let mut text = format!("d = {:?}; necessary condition only", d.0);
            if bad.is_empty() {
                text.push_str("\nno sub-dimension vector with theta.d' > 0");
            }
            for b in &bad {
                text.push_str(&format!("\nviolation: d' = {b:?}, theta.d' = {}", th.pair(b)));
            }
            ctx.emit(
                text,
                json!({ "d": d.0, "violations": bad, "note": "necessary condition only" }),
            );
            if !bad.is_empty() {
                return Err(Failure::Property(String::new()));
            }
        }
        Command::Plot { scene, samples } => {
            let text = read_input(&scene)?;
            let svg = plot::render(&text, samples).map_err(Failure::Input)?;
            print!("{svg}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// A file's contents, or standard input for `-`.
fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}
