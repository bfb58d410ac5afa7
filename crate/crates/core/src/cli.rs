//! Command-line front end: net documents, reports and the demo transcripts.
//!
//! Exit codes are 0 when everything checked holds, 1 on a mathematical failure
//! and 2 on a usage or parameter error.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructors;
use crate::cubic_group::{fermat_cubic, prime_with_invariant_subgroup};
use crate::curves::{cubic_j0_identities, pencil_crossratio_check, HomPoly};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::latin::LatinSquare;
use crate::nets::{check, CubicKind, DualNet, NetClass, Violation};
use crate::plane::{perspectivity, PValue, ProjLine, ProjPoint};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "knets", version, about = "Dual 3-nets and 4-nets in PG(2, p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a net and print it as JSON.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<i64>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Check the net axioms.
    Verify { file: String },
    /// Print the classification tag and its data.
    Classify { file: String },
    /// List perspective centers.
    Centers {
        file: String,
        /// Test every point of the plane instead of meets of net lines.
        #[arg(long)]
        sweep: bool,
    },
    /// Cross-ratio constant at each center, or of a 4-net.
    Crossratio { file: String },
    /// Run a named walk-through and print PASS/FAIL per claim.
    Demo { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Triangular,
    Pencil,
    ConicLine,
    Fermat,
    Tetrahedron,
    Hesse4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub char_exception: bool,
}

/// A net as plain integers; points within a component are sorted
/// lexicographically on normalized coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetDocument {
    pub p: u64,
    pub components: Vec<Vec<[i64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl NetDocument {
    pub fn from_net(net: &DualNet, metadata: Option<Metadata>) -> Self {
        let components = net
            .components()
            .iter()
            .map(|c| {
                let mut pts: Vec<[i64; 3]> = c.iter().map(|q| q.values().map(|v| v as i64)).collect();
                pts.sort_unstable();
                pts
            })
            .collect();
        NetDocument {
            p: net.field().p(),
            components,
            metadata,
        }
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p)
    }

    pub fn points(&self) -> Result<Vec<Vec<ProjPoint>>> {
        let f = self.field()?;
        self.components
            .iter()
            .map(|c| c.iter().map(|&q| ProjPoint::from_ints(&f, q)).collect())
            .collect()
    }

    fn allows_char_exception(&self) -> bool {
        self.metadata.as_ref().is_some_and(|m| m.char_exception)
    }

    /// Every violation of the net axioms; empty when the document is a net.
    pub fn violations(&self) -> Result<Vec<Violation>> {
        Ok(check(&self.field()?, &self.points()?, self.allows_char_exception()))
    }

    pub fn to_net(&self) -> Result<DualNet> {
        DualNet::verify_with(self.field()?, self.points()?, self.allows_char_exception())
    }

    /// Pretty JSON with one line per component.
    pub fn to_json(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("    {}", serde_json::to_string(c).expect("integers serialize")))
            .collect();
        let mut s = format!(
            "{{\n  \"p\": {},\n  \"components\": [\n{}\n  ]",
            self.p,
            comps.join(",\n")
        );
        if let Some(m) = &self.metadata {
            s += &format!(
                ",\n  \"metadata\": {}",
                serde_json::to_string(m).expect("metadata serializes")
            );
        }
        s + "\n}"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("bad net document: {e}")))
    }
}

/// Exit code for an error: parameter problems are usage errors, the rest are
/// mathematical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidModulus(_) | Error::NoRootOfUnity { .. } | Error::InvalidParameter(_) | Error::ZeroVector => {
            EXIT_USAGE
        }
        _ => EXIT_FAIL,
    }
}

fn need<T>(v: Option<T>, name: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("{family} needs --{name}")))
}

pub fn construct(
    family: Family,
    n: Option<usize>,
    p: Option<u64>,
    c: Option<i64>,
    m: Option<usize>,
) -> Result<NetDocument> {
    let mut params = BTreeMap::new();
    let (name, net) = match family {
        Family::Triangular => {
            let (n, p) = (need(n, "n", "triangular")?, need(p, "p", "triangular")?);
            let c = c.unwrap_or(1);
            params.extend([("n".into(), n as i64), ("p".into(), p as i64), ("c".into(), c)]);
            (
                "triangular",
                constructors::triangular_cyclic(n, p, Field::new(p)?.elem(c))?,
            )
        }
        Family::Pencil => {
            let p = need(p, "p", "pencil")?;
            params.insert("p".into(), p as i64);
            ("pencil", constructors::pencil_char_p(p)?)
        }
        Family::ConicLine => {
            let (n, p) = (need(n, "n", "conic-line")?, need(p, "p", "conic-line")?);
            let c = c.unwrap_or(1);
            params.extend([("n".into(), n as i64), ("p".into(), p as i64), ("c".into(), c)]);
            ("conic-line", constructors::conic_line(n, p, Field::new(p)?.elem(c))?)
        }
        Family::Fermat => {
            let (n, p) = (need(n, "n", "fermat")?, need(p, "p", "fermat")?);
            params.extend([("n".into(), n as i64), ("p".into(), p as i64)]);
            ("fermat", constructors::algebraic_fermat(n, p)?.0)
        }
        Family::Tetrahedron => {
            let (m, p) = (need(m, "m", "tetrahedron")?, need(p, "p", "tetrahedron")?);
            params.extend([("m".into(), m as i64), ("p".into(), p as i64)]);
            ("tetrahedron", constructors::tetrahedron(m, p)?)
        }
        Family::Hesse4 => {
            let p = need(p, "p", "hesse4")?;
            params.insert("p".into(), p as i64);
            ("hesse4", constructors::hesse_4net(p)?)
        }
    };
    let meta = Metadata {
        family: name.into(),
        params,
        char_exception: net.char_exception(),
    };
    Ok(NetDocument::from_net(&net, Some(meta)))
}

fn point_json(q: &ProjPoint) -> Value {
    json!(q.values())
}

fn line_json(l: &ProjLine) -> Value {
    json!(l.values())
}

fn violation_json(v: &Violation) -> Value {
    json!({
        "message": v.message,
        "line": v.line.as_ref().map(line_json),
        "component": v.component,
        "count": v.count,
        "text": v.to_string(),
    })
}

pub fn verify_report(doc: &NetDocument) -> Result<(Value, bool)> {
    let violations = doc.violations()?;
    let ok = violations.is_empty();
    let mut report = json!({
        "verified": ok,
        "p": doc.p,
        "k": doc.components.len(),
        "n": doc.components.first().map_or(0, Vec::len),
    });
    if !ok {
        report["violations"] = violations.iter().map(violation_json).collect();
    }
    Ok((report, ok))
}

fn j_json(j: &Option<PValue>) -> Value {
    j.as_ref().map_or(Value::Null, |v| json!(v.to_fraction_string()))
}

pub fn classify_report(net: &DualNet) -> Value {
    let class = net.classify();
    let mut r = json!({ "class": class.tag() });
    match &class {
        NetClass::Triangular { lines } => r["lines"] = lines.iter().map(line_json).collect(),
        NetClass::Pencil { lines, vertex } => {
            r["lines"] = lines.iter().map(line_json).collect();
            r["vertex"] = point_json(vertex);
        }
        NetClass::ConicLine {
            line_component,
            line,
            conic,
        } => {
            r["line_component"] = json!(line_component);
            r["line"] = line_json(line);
            r["conic"] = json!(conic.to_string());
        }
        NetClass::ProperAlgebraic {
            cubic,
            kind,
            singular,
            j,
            solution_dim,
        } => {
            r["cubic"] = json!(cubic.to_string());
            r["kind"] = json!(match kind {
                CubicKind::Nonsingular => "nonsingular",
                CubicKind::Node => "node",
                CubicKind::Cusp => "cusp",
                CubicKind::Other => "other",
            });
            r["singular"] = singular.iter().map(point_json).collect();
            r["j"] = j_json(j);
            r["solution_dim"] = json!(solution_dim);
        }
        NetClass::Tetrahedron { vertices } => r["vertices"] = vertices.iter().map(point_json).collect(),
        NetClass::Unknown => {}
    }
    r
}

pub fn centers_report(net: &DualNet, sweep: bool) -> Value {
    let centers = if sweep {
        net.find_centers_sweep()
    } else {
        net.find_centers()
    };
    json!({
        "method": if sweep { "sweep" } else { "net-lines" },
        "centers": centers.iter().map(point_json).collect::<Vec<_>>(),
    })
}

fn kappa_json(k: &PValue) -> Value {
    let mut v = json!({ "kappa": k.to_fraction_string() });
    if let Some(s) = k.as_scalar() {
        let one = s.one_like();
        v["kappa_signed"] = json!(s.signed());
        v["kappa^2-kappa+1=0"] = json!((s * s - s + one).is_zero());
        v["kappa+1=0"] = json!((s + one).is_zero());
    }
    v
}

pub fn crossratio_report(net: &DualNet) -> Result<Value> {
    if net.k() == 4 {
        let k = net.crossratio_4net()?;
        return Ok(json!({ "net": kappa_json(&k) }));
    }
    let mut out = Vec::new();
    for t in net.find_centers() {
        let mut v = kappa_json(&net.constant_cross_ratio(&t)?);
        v["center"] = point_json(&t);
        out.push(v);
    }
    Ok(json!({ "centers": out }))
}

/// One checked claim of a demo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub text: String,
    pub pass: bool,
}

fn claim(out: &mut Vec<Claim>, text: impl Into<String>, pass: bool) {
    out.push(Claim {
        text: text.into(),
        pass,
    });
}

pub const DEMOS: [&str; 5] = [
    "pencil-crossratio",
    "conic-line",
    "fermat",
    "j0-identities",
    "negative-sweeps",
];

pub fn demo(name: &str) -> Result<Vec<Claim>> {
    match name {
        "pencil-crossratio" => demo_pencil(),
        "conic-line" => demo_conic_line(),
        "fermat" => demo_fermat(),
        "j0-identities" => demo_j0(),
        "negative-sweeps" => demo_negative(),
        _ => Err(Error::InvalidParameter(format!(
            "unknown demo {name:?}; expected one of {}",
            DEMOS.join(", ")
        ))),
    }
}

fn demo_pencil() -> Result<Vec<Claim>> {
    let f = Field::new(13)?;
    let cubic_f = HomPoly::from_int_terms(f, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])?;
    let cubic_g = HomPoly::from_int_terms(f, 3, &[([1, 1, 1], 1)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut out = Vec::new();
    for _ in 0..10 {
        let [a, b, a2, b2] = loop {
            let v = [0; 4].map(|_| f.elem(rng.gen_range(1..13)));
            if v[0] * v[3] != v[2] * v[1] {
                break v;
            }
        };
        let text = format!("F = X^3+Y^3+Z^3, G = XYZ over GF(13), (α,β,α',β') = ({a},{b},{a2},{b2})");
        match pencil_crossratio_check(&cubic_f, &cubic_g, a, b, a2, b2) {
            Ok(r) => claim(
                &mut out,
                format!(
                    "{text}: {} base points, tangent cross-ratio = αβ'/(α'β) = {}",
                    r.values.len(),
                    r.expected
                ),
                r.passed() && r.values.len() == 9,
            ),
            Err(e) => claim(&mut out, format!("{text}: {e}"), false),
        }
    }
    Ok(out)
}

/// Checks of the conic-line pipeline for one parameter set.
pub fn conic_line_claims(n: usize, p: u64, c: i64) -> Vec<Claim> {
    let mut out = Vec::new();
    let tag = format!("conic-line n={n} p={p} c={c}");
    let f = match Field::new(p) {
        Ok(f) => f,
        Err(e) => {
            claim(&mut out, format!("{tag}: {e}"), false);
            return out;
        }
    };
    let net = match constructors::conic_line(n, p, f.elem(c)) {
        Ok(net) => net,
        Err(e) => {
            claim(&mut out, format!("{tag}: verified ({e})"), false);
            return out;
        }
    };
    claim(&mut out, format!("{tag}: verified"), net.is_verified());
    let t = ProjPoint::from_ints(&f, [0, 0, 1]).expect("nonzero");
    let centered = net.is_perspective_center(&t);
    claim(&mut out, format!("{tag}: (0,0,1) is a perspective center"), centered);
    claim(
        &mut out,
        format!("{tag}: center found by find_centers"),
        net.find_centers().contains(&t),
    );
    let kappa = net.constant_cross_ratio(&t);
    let minus_one = PValue::finite(f.elem(-1));
    claim(
        &mut out,
        format!("{tag}: κ = {} on all {n} lines through the center", p - 1),
        kappa.as_ref() == Ok(&minus_one),
    );
    let axis = ProjLine::from_ints(&f, [0, 0, 1]).expect("nonzero");
    let maps = perspectivity(&t, &axis, f.elem(-1)).is_ok_and(|u| net.maps_component(&u, 1, 2));
    claim(&mut out, format!("{tag}: the κ-perspectivity maps Λ2 onto Λ3"), maps);
    let transversal = LatinSquare::from_net(&net)
        .ok()
        .and_then(|l| l.transversal_search())
        .is_some();
    claim(
        &mut out,
        format!("{tag}: the latin square has a transversal"),
        transversal,
    );
    out
}

fn demo_conic_line() -> Result<Vec<Claim>> {
    Ok([(5, 11, 1), (7, 29, 2), (9, 19, 1)]
        .into_iter()
        .flat_map(|(n, p, c)| conic_line_claims(n, p, c))
        .collect())
}

/// Checks of the Fermat coset pipeline at one prime.
pub fn fermat_claims(n: usize, p: u64) -> Vec<Claim> {
    let mut out = Vec::new();
    let tag = format!("fermat n={n} p={p}");
    let (net, t) = match constructors::algebraic_fermat(n, p) {
        Ok(x) => x,
        Err(e) => {
            claim(&mut out, format!("{tag}: coset net verifies ({e})"), false);
            return out;
        }
    };
    let f = net.field();
    claim(&mut out, format!("{tag}: coset net verifies"), net.is_verified());
    let curve = fermat_cubic(f);
    claim(
        &mut out,
        format!("{tag}: all points lie on X^3+Y^3=Z^3"),
        net.components().iter().flatten().all(|q| curve.vanishes_at(q)),
    );
    claim(
        &mut out,
        format!("{tag}: (0,0,1) is a perspective center"),
        net.is_perspective_center(&t),
    );
    let corners: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .iter()
        .map(|&c| ProjPoint::from_ints(&f, c).expect("nonzero"))
        .collect();
    let centers = net.find_centers_sweep();
    claim(
        &mut out,
        format!("{tag}: {} centers, all among the corners", centers.len()),
        centers.len() <= 3 && centers.iter().all(|c| corners.contains(c)),
    );
    let k = net.constant_cross_ratio(&t).ok().and_then(|k| k.as_scalar());
    claim(
        &mut out,
        format!("{tag}: κ satisfies κ^2-κ+1 = 0"),
        k.is_some_and(|k| (k * k - k + k.one_like()).is_zero()),
    );
    let j0 = matches!(net.classify(), NetClass::ProperAlgebraic { j: Some(j), .. } if j == PValue::finite(f.zero()));
    claim(&mut out, format!("{tag}: classified proper-algebraic with j = 0"), j0);
    out
}

fn demo_fermat() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for n in [3, 7] {
        match prime_with_invariant_subgroup(n, 7, 1000) {
            Ok(p) => out.extend(fermat_claims(n, p)),
            Err(e) => claim(&mut out, format!("fermat n={n}: prime scan ({e})"), false),
        }
    }
    Ok(out)
}

/// The `3f'g - 2fg'` and `Σβγ` identities at `samples` random points over GF(p).
pub fn j0_identity_claims(p: u64, samples: usize, seed: u64) -> Result<Vec<Claim>> {
    let f = Field::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut one, mut two) = (0, 0);
    for _ in 0..samples {
        let [a, b, c, m] = [0; 4].map(|_| f.elem(rng.gen_range(0..p as i64)));
        let r = cubic_j0_identities(a, b, c, m);
        one += usize::from(r.lhs1 == r.rhs1);
        two += usize::from(r.lhs2 == r.rhs2);
    }
    let mut out = Vec::new();
    claim(
        &mut out,
        format!("3f'g - 2fg' identity over GF({p}): {one}/{samples} samples"),
        one == samples,
    );
    claim(
        &mut out,
        format!("Σβγ identity over GF({p}): {two}/{samples} samples"),
        two == samples,
    );
    Ok(out)
}

/// At a corner `((c+1)/3, ±sqrt((1-2c)/3))` of a j = 0 Legendre cubic every β vanishes.
pub fn corner_claims(primes: &[u64]) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for &p in primes {
        let f = Field::new(p)?;
        let three = f.elem(3);
        let mut hits = 0;
        let mut ok = true;
        for c in f.elements().filter(|&c| (c * c - c + f.one()).is_zero()) {
            let a = (c + f.one()) / three;
            let Some((b, _)) = f.sqrt((f.one() - f.elem(2) * c) / three) else {
                continue;
            };
            for m in f.elements() {
                ok &= cubic_j0_identities(a, b, c, m).betas.iter().all(|x| x.is_zero());
            }
            hits += 1;
        }
        claim(
            &mut out,
            format!("corner specialization over GF({p}) zeroes β0..β3 at every slope through {hits} corner points"),
            ok && hits > 0,
        );
    }
    Ok(out)
}

fn demo_j0() -> Result<Vec<Claim>> {
    let mut out = j0_identity_claims(101, 50, 51)?;
    out.extend(corner_claims(&[7, 19, 31])?);
    Ok(out)
}

/// `find_centers_sweep` is empty.
pub fn no_center_claim(tag: &str, net: Result<DualNet>) -> Claim {
    match net {
        Ok(net) => {
            let centers = net.find_centers_sweep();
            Claim {
                text: format!("{tag}: no perspective center in the plane ({} found)", centers.len()),
                pass: centers.is_empty(),
            }
        }
        Err(e) => Claim {
            text: format!("{tag}: {e}"),
            pass: false,
        },
    }
}

fn demo_negative() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for (n, p, c) in [(5usize, 11u64, 1i64), (7, 29, 1)] {
        let net = Field::new(p).and_then(|f| constructors::triangular_cyclic(n, p, f.elem(c)));
        out.push(no_center_claim(&format!("triangular n={n} p={p}"), net));
    }
    for (m, p) in [(2usize, 11u64), (2, 13), (3, 19)] {
        out.push(no_center_claim(
            &format!("tetrahedron m={m} p={p}"),
            constructors::tetrahedron(m, p),
        ));
    }
    match constructors::pencil_char_p(5) {
        Ok(net) => {
            let centers = net.find_centers_sweep();
            claim(
                &mut out,
                format!(
                    "pencil p=5 (n = p): verifies with {} perspective centers",
                    centers.len()
                ),
                !centers.is_empty(),
            );
        }
        Err(e) => claim(&mut out, format!("pencil p=5: {e}"), false),
    }
    Ok(out)
}

fn read_doc(file: &str) -> Result<NetDocument> {
    let mut s = String::new();
    let read = if file == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| s = t)
    };
    read.map_err(|e| Error::InvalidParameter(format!("cannot read {file}: {e}")))?;
    NetDocument::from_json(&s)
}

fn print_json(out: &mut dyn Write, v: &Value) {
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit_code(e)
}

/// Loads a document that must verify; on failure prints the violations.
fn load_net(file: &str) -> Result<std::result::Result<DualNet, Value>> {
    let doc = read_doc(file)?;
    let (report, ok) = verify_report(&doc)?;
    if !ok {
        return Ok(Err(report));
    }
    doc.to_net().map(Ok)
}

/// Runs a parsed command and returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Construct { family, n, p, c, m } => construct(family, n, p, c, m).map(|doc| {
            let _ = writeln!(out, "{}", doc.to_json());
            EXIT_PASS
        }),
        Command::Verify { file } => read_doc(&file).and_then(|doc| verify_report(&doc)).map(|(r, ok)| {
            print_json(out, &r);
            if ok {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }),
        Command::Classify { file } => with_net(&file, out, |net| Ok(classify_report(net))),
        Command::Centers { file, sweep } => with_net(&file, out, |net| Ok(centers_report(net, sweep))),
        Command::Crossratio { file } => with_net(&file, out, crossratio_report),
        Command::Demo { name } => demo(&name).map(|claims| {
            for c in &claims {
                let _ = writeln!(out, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.text);
            }
            if claims.iter().all(|c| c.pass) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }),
    };
    result.unwrap_or_else(|e| report_error(err, &e))
}

fn with_net(file: &str, out: &mut dyn Write, f: impl FnOnce(&DualNet) -> Result<Value>) -> Result<i32> {
    match load_net(file)? {
        Ok(net) => {
            print_json(out, &f(&net)?);
            Ok(EXIT_PASS)
        }
        Err(report) => {
            print_json(out, &report);
            Ok(EXIT_FAIL)
        }
    }
}
