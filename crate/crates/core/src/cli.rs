//! Command-line surface: argument parsing, report assembly, figure output.
//!
//! Exit codes: 0 when every verdict holds, 1 when one fails, 2 on bad input.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cube::{
    nicomachus_check, pyramidal_decomposition, quarter_hypercube, refine_to_six, simplicial_decomposition, SixPiece,
};
use crate::expansion::{
    cancel, group_by_level, heron_signed_expansion, heron_target, multinomial_expand, signed_sum, HERON_SYMBOLS,
};
use crate::geometry::{apply_isometry, certify_tiling, congruent, Piece, Projection};
use crate::heron::{lhs_dissection, rewrite_records, triangle_from_coords, verify_datum};
use crate::pythag::{product_dissection, sum_of_squares_product, Placement4, RightTriangleParams};
use crate::record::CertificateRecord;
use crate::report::{emit_svg, ReportDocument};
use crate::scalar::{format_rational, parse_rational, QuadScalar, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn legs_arg(s: &str) -> Result<(Rational, Rational), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two legs \"a,b\", got {:?}", s))?;
    Ok((rational_arg(a)?, rational_arg(b)?))
}

#[derive(Parser, Debug)]
#[command(
    name = "heron4d",
    version,
    about = "Certified 4-D dissections behind Heron's formula"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write SVG figures into this directory.
    #[arg(long, global = true)]
    pub svg_dir: Option<PathBuf>,
    /// Print every certificate.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Row-major 4x2 projection matrix: eight comma-separated rationals.
    #[arg(long, global = true)]
    pub projection: Option<String>,
    /// Fail the named certificate ("first" for the first one); for testing exit codes.
    #[arg(long, global = true, hide = true)]
    pub corrupt_certificate: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Verify the full chain for the triangle (0,0), (p,0), (r,h).
    Heron {
        /// Base length; the base must be the longest side.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        p: Rational,
        /// Foot of the altitude on the base.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        r: Rational,
        /// Altitude.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        h: Rational,
    },
    /// The n! ordering simplices of the n-cube.
    Cube {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational_arg, default_value = "1", allow_hyphen_values = true)]
        edge: Rational,
    },
    /// The n pyramids of the unit n-cube.
    Pyramids {
        #[arg(long)]
        n: usize,
    },
    /// The 4-cube cut into four products of right isosceles triangles.
    Quarter {
        #[arg(long, value_parser = rational_arg, default_value = "1", allow_hyphen_values = true)]
        edge: Rational,
    },
    /// Address classes of (x1 + ... + xk)^n.
    Multinomial {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// The 81 signed boxes of (a+b+c)(a+b-c)(a-b+c)(-a+b+c).
    HeronExpand {
        /// Square of the first side.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        a2: Rational,
        /// Square of the second side.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        b2: Rational,
        /// Third side.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        c: Rational,
    },
    /// Product of two right-triangle square dissections, reassembled.
    Pythag {
        /// Legs of the first triangle, e.g. 3,4.
        #[arg(long, value_parser = legs_arg)]
        legs1: (Rational, Rational),
        /// Legs of the second triangle.
        #[arg(long, value_parser = legs_arg)]
        legs2: (Rational, Rational),
    },
    /// 1^3 + ... + m^3 = (m(m+1)/2)^2 for every m <= n.
    Nicomachus {
        #[arg(long)]
        n: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Heron { .. } => "heron",
            Command::Cube { .. } => "cube",
            Command::Pyramids { .. } => "pyramids",
            Command::Quarter { .. } => "quarter",
            Command::Multinomial { .. } => "multinomial",
            Command::HeronExpand { .. } => "heron-expand",
            Command::Pythag { .. } => "pythag",
            Command::Nicomachus { .. } => "nicomachus",
        }
    }
}

/// A named set of pieces to draw.
pub struct Figure {
    pub name: String,
    pub pieces: Vec<Piece>,
}

impl Figure {
    fn new(name: impl Into<String>, pieces: Vec<Piece>) -> Self {
        Figure {
            name: name.into(),
            pieces,
        }
    }

    /// One figure per piece, named `{prefix}_{index}`.
    fn each(prefix: &str, pieces: &[Piece]) -> Vec<Figure> {
        pieces
            .iter()
            .enumerate()
            .map(|(i, p)| Figure::new(format!("{}_{:02}", prefix, i), vec![p.clone()]))
            .collect()
    }
}

/// Builds the report (without timestamp) and figures for one command.
pub fn build_report(cmd: &Command, args: &[String]) -> Result<(ReportDocument, Vec<Figure>), String> {
    let mut doc = ReportDocument::new(cmd.name(), args);
    let figures = match cmd {
        Command::Heron { p, r, h } => heron(&mut doc, p, r, h)?,
        Command::Cube { n, edge } => cube(&mut doc, *n, edge)?,
        Command::Pyramids { n } => pyramids(&mut doc, *n)?,
        Command::Quarter { edge } => quarter(&mut doc, edge)?,
        Command::Multinomial { k, n } => multinomial(&mut doc, *k, *n)?,
        Command::HeronExpand { a2, b2, c } => heron_expand(&mut doc, a2, b2, c)?,
        Command::Pythag { legs1, legs2 } => pythag(&mut doc, legs1, legs2)?,
        Command::Nicomachus { n } => nicomachus(&mut doc, *n)?,
    };
    doc.finish();
    Ok((doc, figures))
}

fn q(r: &Rational) -> QuadScalar {
    QuadScalar::from_rational(r.clone())
}

fn heron(doc: &mut ReportDocument, p: &Rational, r: &Rational, h: &Rational) -> Result<Vec<Figure>, String> {
    let t = triangle_from_coords(p.clone(), r.clone(), h.clone()).map_err(|e| e.to_string())?;
    doc.input("p", format_rational(&t.p));
    doc.input("r", format_rational(&t.r));
    doc.input("h", format_rational(&t.h));
    doc.input("reflected", t.reflected);
    let report = verify_datum(&t).map_err(|e| e.to_string())?;
    doc.value("a^2", &q(&t.a2));
    doc.value("b^2", &q(&t.b2));
    doc.value("c^2", &q(&t.c2()));
    doc.value("area", &q(&t.area()));
    let names = [
        "16*A^2",
        "4*p^2*h^2",
        "2a^2b^2+2a^2c^2+2b^2c^2-a^4-b^4-c^4",
        "(a+b+c)(a+b-c)(a-b+c)(-a+b+c)",
    ];
    for (name, v) in names.iter().zip(report.chain_values()) {
        doc.value(name, &v);
    }
    doc.value("chain", report.value());
    doc.value("16*s(s-a)(s-b)(s-c)", &report.radical);
    for s in &report.steps {
        doc.step(s);
    }
    let values = report.chain_values();
    doc.check("chain values agree", values.iter().all(|v| v == &values[0]), None);
    doc.check(
        "radical form agrees",
        &report.radical == report.value(),
        Some(format!("{} vs {}", report.radical, report.value())),
    );
    doc.text("isosceles_right", t.isosceles_right);
    if t.isosceles_right {
        let four_a4 = QuadScalar::from_int(4) * q(&t.a2) * q(&t.a2);
        doc.check("reduces to 4a^4", &four_a4 == report.value(), None);
    }

    let d = lhs_dissection(&t.p, &t.r, &t.h);
    let moved: Vec<Piece> = d
        .parts
        .iter()
        .map(|(piece, iso)| piece.translated(iso.translation_part()))
        .collect();
    let mut figs = vec![
        Figure::new("heron_lhs_copies", d.copies.clone()),
        Figure::new("heron_lhs_parts", d.parts.iter().map(|(p, _)| p.clone()).collect()),
        Figure::new("heron_lhs_rectangles", moved),
    ];
    figs.extend(Figure::each("heron_lhs_copy", &d.copies));
    Ok(figs)
}

fn check_count(doc: &mut ReportDocument, name: &str, got: usize, want: usize) {
    doc.check(name, got == want, (got != want).then(|| format!("{} != {}", got, want)));
}

/// Every piece is an image of `pieces[0]`, each witness checked by applying it.
fn congruence_record(name: &str, pieces: &[Piece], signed_permutation: bool) -> CertificateRecord {
    let verified = pieces
        .iter()
        .filter(|p| {
            congruent(&pieces[0], p).is_some_and(|w| {
                let img = apply_isometry(&w, &pieces[0]);
                (!signed_permutation || w.as_signed_permutation().is_some()) && img.len() == 1 && img[0].same_region(p)
            })
        })
        .count();
    CertificateRecord::congruence(name, pieces.len(), verified)
}

fn cube(doc: &mut ReportDocument, n: usize, edge: &Rational) -> Result<Vec<Figure>, String> {
    doc.input("n", n);
    doc.input("edge", format_rational(edge));
    let d = simplicial_decomposition(n, &q(edge)).map_err(|e| e.to_string())?;
    let vols = d.volumes();
    let count = d.orderings.len();
    doc.text("simplices", count);
    doc.value("container volume", &d.container_volume());
    let mut distinct = vols.clone();
    distinct.dedup();
    if let [v] = distinct.as_slice() {
        doc.value("simplex volume", v);
    }
    let factorial: usize = (1..=n).product();
    check_count(doc, "n! simplices", count, factorial);
    let each = d.container_volume() * QuadScalar::from_rational(Rational::new(1.into(), (factorial as i64).into()));
    doc.check("equal volumes edge^n/n!", vols.iter().all(|v| v == &each), None);
    doc.check("distinct orderings sum to the cube", d.combinatorial_ok(), None);
    doc.text(
        "orderings",
        d.orderings.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", "),
    );
    let mut figs = Vec::new();
    if let (Some(pieces), Some(cert)) = (&d.pieces, d.certificate()) {
        doc.certificate(None, &CertificateRecord::tiling("cube tiling", &cert));
        doc.certificate(None, &congruence_record("signed permutation witnesses", pieces, true));
        figs.push(Figure::new("cube_simplices", pieces.clone()));
        figs.extend(Figure::each("cube_simplex", pieces));
    }
    Ok(figs)
}

fn pyramids(doc: &mut ReportDocument, n: usize) -> Result<Vec<Figure>, String> {
    doc.input("n", n);
    let pyr = pyramidal_decomposition(n).map_err(|e| e.to_string())?;
    let per: usize = (1..n).product();
    let share = QuadScalar::from_rational(Rational::new(1.into(), (n as i64).into()));
    let mut all = Vec::new();
    for p in &pyr {
        doc.value(&format!("P{} volume", p.axis + 1), &q(&p.volume));
        check_count(doc, &format!("P{} simplices", p.axis + 1), p.orderings.len(), per);
        doc.check(&format!("P{} volume 1/n", p.axis + 1), q(&p.volume) == share, None);
        all.extend(p.orderings.iter().cloned());
    }
    all.sort();
    all.dedup();
    check_count(doc, "pyramids partition the orderings", all.len(), per * n);
    let mut figs = Vec::new();
    let pieces: Option<Vec<Vec<Piece>>> = pyr.iter().map(|p| p.pieces()).collect();
    if let Some(pieces) = pieces {
        let flat: Vec<Piece> = pieces.iter().flatten().cloned().collect();
        let cert = certify_tiling(&Piece::cube(&QuadScalar::one()), &flat);
        doc.certificate(None, &CertificateRecord::tiling("pyramids tile the cube", &cert));
        for (p, set) in pyr.iter().zip(&pieces) {
            figs.push(Figure::new(format!("pyramid_P{}", p.axis + 1), set.clone()));
        }
    }
    Ok(figs)
}

fn quarter(doc: &mut ReportDocument, edge: &Rational) -> Result<Vec<Figure>, String> {
    doc.input("edge", format_rational(edge));
    let pieces = quarter_hypercube(&q(edge)).map_err(|e| e.to_string())?;
    check_count(doc, "four pieces", pieces.len(), 4);
    for (i, p) in pieces.iter().enumerate() {
        doc.value(&format!("piece {} volume", i), &p.volume());
    }
    let cube = Piece::cube(&q(edge));
    doc.certificate(
        None,
        &CertificateRecord::tiling("quarter tiling", &certify_tiling(&cube, &pieces)),
    );
    doc.certificate(None, &congruence_record("quarter congruence", &pieces, false));
    for piece in [SixPiece::DeltaDelta, SixPiece::P4] {
        let six = refine_to_six(piece);
        let shared = six.shared_orderings();
        let name = format!("{:?}", piece);
        doc.text(
            &format!("{} orderings", name),
            six.orderings.iter().map(|o| o.label()).collect::<Vec<_>>().join(","),
        );
        doc.text(
            &format!("{} shared", name),
            shared.iter().map(|o| o.label()).collect::<Vec<_>>().join(","),
        );
        check_count(doc, &format!("{} shares three orderings", name), shared.len(), 3);
    }
    let mut figs = vec![Figure::new("quarter", pieces.clone())];
    figs.extend(Figure::each("quarter_piece", &pieces));
    Ok(figs)
}

fn multinomial(doc: &mut ReportDocument, k: usize, n: usize) -> Result<Vec<Figure>, String> {
    doc.input("k", k);
    doc.input("n", n);
    let m = multinomial_expand(k, n).map_err(|e| e.to_string())?;
    for c in &m.classes {
        doc.text(&format!("K={} {}", c.level, c.monomial()), &c.coefficient);
    }
    let total = (k as u64).pow(n as u32);
    doc.text("classes", m.classes.len());
    doc.text("coefficient sum", m.coefficient_sum());
    doc.check("coefficients sum to k^n", m.coefficient_sum() == total.into(), None);
    check_count(doc, "addresses", m.address_count(), total as usize);
    Ok(Vec::new())
}

fn heron_expand(doc: &mut ReportDocument, a2: &Rational, b2: &Rational, c: &Rational) -> Result<Vec<Figure>, String> {
    doc.input("a2", format_rational(a2));
    doc.input("b2", format_rational(b2));
    doc.input("c", format_rational(c));
    let root = |x: &Rational| QuadScalar::sqrt_of(x).map_err(|e| e.to_string());
    let (a, b, c) = (root(a2)?, root(b2)?, q(c));
    let boxes = heron_signed_expansion(&a, &b, &c).map_err(|e| e.to_string())?;
    let net = cancel(&boxes, &HERON_SYMBOLS);
    let values = [a.clone(), b.clone(), c.clone()];
    doc.text("terms", boxes.len());
    for (level, terms) in group_by_level(&boxes) {
        doc.text(&format!("level {}", level), terms.len());
    }
    doc.text("cancelled pairs", net.pairs.len());
    doc.text("net", &net.net);
    let product = (&a + &b + &c) * (&a + &b - &c) * (&a - &b + &c) * (-&a + &b + &c);
    doc.value("product", &product);
    doc.value("net value", &net.net.eval(&values));
    check_count(doc, "81 terms", boxes.len(), 81);
    doc.certificate(
        None,
        &CertificateRecord::cancellation("cancellation", &net, &heron_target(), &values),
    );
    let sum = signed_sum(&boxes);
    doc.check("signed boxes sum to the product", sum == product, None);
    doc.check("net equals the product", net.net.eval(&values) == product, None);
    Ok(Vec::new())
}

fn pythag(
    doc: &mut ReportDocument,
    legs1: &(Rational, Rational),
    legs2: &(Rational, Rational),
) -> Result<Vec<Figure>, String> {
    doc.input(
        "legs1",
        format!("{},{}", format_rational(&legs1.0), format_rational(&legs1.1)),
    );
    doc.input(
        "legs2",
        format!("{},{}", format_rational(&legs2.0), format_rational(&legs2.1)),
    );
    let t1 = RightTriangleParams::from_legs(legs1.0.clone(), legs1.1.clone()).map_err(|e| e.to_string())?;
    let t2 = RightTriangleParams::from_legs(legs2.0.clone(), legs2.1.clone()).map_err(|e| e.to_string())?;
    let d = product_dissection(&t1, &t2);
    let re = d.reassemble();
    doc.text("pieces", d.pieces.len());
    for (class, count) in d.census() {
        doc.text(&format!("census {}", class.label()), count);
    }
    doc.value("source volume", &d.container.volume());
    for tg in &re.targets {
        doc.value(&format!("target {}", tg.name), &tg.aligned.volume());
    }
    let (records, source, targets) = rewrite_records("product", &d, &re);
    for r in &records {
        doc.certificate(None, r);
    }
    doc.check("source volume equals target volumes", source == targets, None);
    let sos = sum_of_squares_product(&q(&t1.x), &q(&t1.y), &q(&t2.x), &q(&t2.y)).map_err(|e| e.to_string())?;
    doc.certificate(None, &CertificateRecord::tiling("sum_of_squares", &sos.certificate));
    doc.check("sum of squares matches source", sos.container.volume() == source, None);

    let mut figs = vec![Figure::new("pythag_source", d.pieces.clone())];
    figs.extend(Figure::each("pythag_piece", &d.pieces));
    for (k, tg) in re.targets.iter().enumerate() {
        let moved: Vec<Piece> = re
            .placements
            .iter()
            .filter(|p| p.target == k)
            .map(Placement4::moved)
            .collect();
        figs.push(Figure::new(format!("pythag_target_{}", tg.name), moved));
    }
    Ok(figs)
}

fn nicomachus(doc: &mut ReportDocument, n: u64) -> Result<Vec<Figure>, String> {
    doc.input("n", n);
    if n == 0 {
        return Err("n must be at least 1".into());
    }
    let failures: Vec<u64> = (1..=n).filter(|&m| !nicomachus_check(m).equal).collect();
    let last = nicomachus_check(n);
    doc.text("sum of cubes", &last.sum_of_cubes);
    doc.text("square of triangular number", &last.square_of_triangular);
    doc.check(
        "equal for every m <= n",
        failures.is_empty(),
        (!failures.is_empty()).then(|| format!("fails at {:?}", failures)),
    );
    Ok(Vec::new())
}

fn write_figures(dir: &Path, figs: &[Figure], projection: &Projection) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    figs.iter()
        .map(|f| {
            let path = dir.join(format!("{}.svg", f.name));
            emit_svg(&f.pieces, projection, &path)?;
            Ok(path.display().to_string())
        })
        .collect()
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let projection = match cli.common.projection.as_deref().map(str::parse::<Projection>) {
        None => Projection::standard(),
        Some(Ok(p)) => p,
        Some(Err(e)) => {
            eprintln!("error: bad --projection: {}", e);
            return EXIT_INPUT;
        }
    };
    let (mut doc, figs) = match build_report(&cli.command, &args[1..]) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_INPUT;
        }
    };
    if let Some(name) = &cli.common.corrupt_certificate {
        if !doc.corrupt(name) {
            eprintln!("error: no certificate named {:?}", name);
            return EXIT_INPUT;
        }
    }
    if let Some(dir) = &cli.common.svg_dir {
        match write_figures(dir, &figs, &projection) {
            Ok(paths) => doc.figures = paths,
            Err(e) => {
                eprintln!("error: writing figures: {}", e);
                return EXIT_INPUT;
            }
        }
    }
    doc.stamp();
    if let Some(path) = &cli.common.json {
        if let Err(e) = std::fs::write(path, doc.to_json() + "\n") {
            eprintln!("error: writing {}: {}", path.display(), e);
            return EXIT_INPUT;
        }
    }
    print_summary(&doc, cli.common.verbose);
    if doc.verdict {
        EXIT_OK
    } else {
        eprintln!("verdict false: {}", doc.failure.as_deref().unwrap_or("unknown"));
        EXIT_FAILED
    }
}

fn print_summary(doc: &ReportDocument, verbose: bool) {
    use std::fmt::Write as _;
    use std::io::Write as _;
    let mut out = String::new();
    writeln!(
        out,
        "{}: {}",
        doc.command,
        if doc.verdict { "verified" } else { "FAILED" }
    )
    .unwrap();
    for v in &doc.values {
        match &v.decimal {
            Some(d) if d != &v.exact => writeln!(out, "  {} = {} (~{})", v.name, v.exact, d),
            _ => writeln!(out, "  {} = {}", v.name, v.exact),
        }
        .unwrap();
    }
    for s in &doc.steps {
        writeln!(
            out,
            "  step {}: {} = {} [{}] {}",
            s.name,
            s.left.exact,
            s.right.exact,
            s.certificates.len(),
            if s.equal { "ok" } else { "MISMATCH" }
        )
        .unwrap();
    }
    let failed_certs = doc.certificates.iter().filter(|c| !c.verdict).count();
    writeln!(
        out,
        "  certificates: {} ({} failed)",
        doc.certificates.len(),
        failed_certs
    )
    .unwrap();
    for c in &doc.certificates {
        if verbose || !c.verdict {
            writeln!(
                out,
                "    {} [{}] {} expected {} actual {}",
                c.name,
                c.kind,
                if c.verdict { "ok" } else { "FAILED" },
                c.expected.exact,
                c.actual.exact
            )
            .unwrap();
        }
    }
    for c in &doc.checks {
        if verbose || !c.ok {
            writeln!(out, "    check {}: {}", c.name, if c.ok { "ok" } else { "FAILED" }).unwrap();
        }
    }
    for f in &doc.figures {
        writeln!(out, "  figure {}", f).unwrap();
    }
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(out.as_bytes());
}
