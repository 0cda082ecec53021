//! Text formats: labeled edge CSV, 1-based edge lists, pixel matrices, PGM
//! images, graph-sequence blocks, verification reports and run manifests.
//!
//! Readers take the whole file as a string and report the 1-based line of
//! the first problem. Writers are byte-stable for equal inputs.

use std::fmt::Write as _;
use std::io::{self, Write};

use graphex_core::graph::Component;
use graphex_core::sequence::GraphSequence;
use graphex_core::{LabeledEdge, LabeledGraph, PixelGraphon, UnlabeledGraph};
use serde::{Deserialize, Serialize};

use crate::verify::TestReport;

pub const LABELED_HEADER: &str = "theta,theta_prime,component";
pub const REPORT_HEADER: &str = "suite,test,statistic,observed,threshold,pass,replicates,seed";

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] graphex_core::Error),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

/// Positional decimal with 17 significant digits, enough to round-trip any
/// finite `f64`.
pub fn decimal17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // The exponent of the rounded 17-digit form, not of `log10`, which can
    // be off by one next to powers of ten.
    let sci = format!("{x:.16e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).expect("exponent of {:e}");
    let decimals = (16 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_labeled_csv(w: &mut impl Write, g: &LabeledGraph) -> io::Result<()> {
    writeln!(w, "{LABELED_HEADER}")?;
    for e in g.edges() {
        writeln!(w, "{},{},{}", decimal17(e.theta), decimal17(e.theta_prime), e.component)?;
    }
    Ok(())
}

/// The size of the result is its largest label, since the format does not
/// record one.
pub fn parse_labeled_csv(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, LABELED_HEADER)) => {}
        Some((n, other)) => return Err(at(n, format!("expected header `{LABELED_HEADER}`, got `{other}`"))),
        None => return Err(at(1, "missing header")),
    }
    let mut edges = Vec::new();
    for (n, line) in lines.filter(|(_, l)| !l.is_empty()) {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [a, b, c] = fields[..] else {
            return Err(at(n, format!("expected 3 fields, got {}", fields.len())));
        };
        let a = parse_label(n, a)?;
        let b = parse_label(n, b)?;
        let c: Component = c.parse().map_err(|_| at(n, format!("unknown component `{c}`")))?;
        edges.push(LabeledEdge::new(a, b, c));
    }
    let size = edges.iter().map(LabeledEdge::max_label).fold(0.0, f64::max);
    Ok(LabeledGraph::new(size, edges)?)
}

fn parse_label(line: usize, s: &str) -> Result<f64, ParseError> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
        _ => Err(at(line, format!("label `{s}` is not a finite nonnegative number"))),
    }
}

/// One `u v` line per edge, 1-based ids.
pub fn write_edge_list(w: &mut impl Write, g: &UnlabeledGraph) -> io::Result<()> {
    for &(u, v) in g.edges() {
        writeln!(w, "{} {}", u + 1, v + 1)?;
    }
    Ok(())
}

/// Reads `u v` lines with positive integer ids; blank lines and lines
/// starting with `#` are skipped. Ids are compressed to `0..n` in order.
pub fn parse_edge_list(text: &str) -> Result<UnlabeledGraph, ParseError> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ids: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = ids[..] else {
            return Err(at(i + 1, format!("expected `u v`, got `{line}`")));
        };
        edges.push((parse_id(i + 1, u)?, parse_id(i + 1, v)?));
    }
    Ok(UnlabeledGraph::from_edges(edges))
}

fn parse_id(line: usize, s: &str) -> Result<usize, ParseError> {
    match s.parse::<usize>() {
        Ok(id) if id >= 1 => Ok(id - 1),
        _ => Err(at(line, format!("vertex id `{s}` is not a positive integer"))),
    }
}

/// `cellwidth=<w>` then one comma-separated row per line.
pub fn write_pixel_csv(w: &mut impl Write, pg: &PixelGraphon) -> io::Result<()> {
    writeln!(w, "cellwidth={}", pg.cell_width())?;
    let n = pg.size();
    let mut row = String::new();
    for i in 0..n {
        row.clear();
        for j in 0..n {
            if j > 0 {
                row.push(',');
            }
            write!(row, "{}", pg.get(i, j)).expect("writing to a String");
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}

pub fn parse_pixel_csv(text: &str) -> Result<PixelGraphon, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (n0, header) = lines.next().ok_or_else(|| at(1, "missing `cellwidth=` header"))?;
    let width = header
        .strip_prefix("cellwidth=")
        .ok_or_else(|| at(n0, format!("expected `cellwidth=<decimal>`, got `{header}`")))?;
    let cell_width: f64 = width.trim().parse().map_err(|_| at(n0, format!("bad cell width `{width}`")))?;
    let mut rows = Vec::new();
    for (n, line) in lines {
        let row = line
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| at(n, format!("bad pixel value `{x}`"))))
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push((n, row));
    }
    let size = rows.len();
    if size == 0 {
        return Err(at(n0, "pixel matrix has no rows"));
    }
    let mut values = Vec::with_capacity(size * size);
    for (n, row) in rows {
        if row.len() != size {
            return Err(at(n, format!("expected {size} values, got {}", row.len())));
        }
        values.extend(row);
    }
    Ok(PixelGraphon::new(size, cell_width, values)?)
}

/// Plain PGM, one pixel per cell: 0 is white (255), 1 is black (0).
pub fn write_pgm(w: &mut impl Write, pg: &PixelGraphon) -> io::Result<()> {
    let n = pg.size();
    writeln!(w, "P2\n{n} {n}\n255")?;
    let mut row = String::new();
    for i in 0..n {
        row.clear();
        for j in 0..n {
            if j > 0 {
                row.push(' ');
            }
            let grey = (255.0 * (1.0 - pg.get(i, j))).round() as u8;
            write!(row, "{grey}").expect("writing to a String");
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}

/// Blocks `# step k @ tau=<t>` (`# step k` without sizes), `k` from 1,
/// each followed by the edges entering at that step in 1-based appearance
/// ids.
pub fn write_sequence(w: &mut impl Write, seq: &GraphSequence) -> io::Result<()> {
    for (k, step) in seq.steps().iter().enumerate() {
        match seq.jump_times() {
            Some(t) => writeln!(w, "# step {} @ tau={}", k + 1, decimal17(t[k]))?,
            None => writeln!(w, "# step {}", k + 1)?,
        }
        for &(u, v) in step {
            writeln!(w, "{} {}", u + 1, v + 1)?;
        }
    }
    Ok(())
}

pub fn write_report_csv(w: &mut impl Write, reports: &[TestReport]) -> io::Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            csv_field(&r.suite),
            csv_field(&r.test),
            csv_field(&r.statistic),
            r.observed,
            r.threshold,
            r.pass,
            r.replicates,
            r.seed_field(),
        )?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComponentCounts {
    #[serde(rename = "W")]
    pub w: usize,
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "I")]
    pub i: usize,
}

impl ComponentCounts {
    pub fn of(g: &LabeledGraph) -> Self {
        Self {
            w: g.count_component(Component::W),
            s: g.count_component(Component::S),
            i: g.count_component(Component::I),
        }
    }
}

/// Parameters and outcome of one command run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<ComponentCounts>,
    pub edges: usize,
    pub vertices: usize,
}

pub fn write_manifest(w: &mut impl Write, m: &Manifest) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, m)?;
    writeln!(w)
}

pub fn parse_manifest(text: &str) -> Result<Manifest, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(f: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn decimal17_round_trips() {
        for x in [0.1, 1.0 / 3.0, 2.5, 9.999999999999999e-1, 123.456, 1e-7, 0.0, 5e-324, 1.7976931348623157e308] {
            let s = decimal17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            assert!(!s.contains('e'), "{s}");
        }
        assert_eq!(decimal17(2.5), "2.5000000000000000");
        assert_eq!(decimal17(0.1), "0.10000000000000001");
    }

    #[test]
    fn labeled_round_trip() {
        let g = LabeledGraph::new(
            3.0,
            vec![
                LabeledEdge::new(0.1, 2.0, Component::W),
                LabeledEdge::new(1.0 / 3.0, 1.0 / 3.0, Component::S),
                LabeledEdge::new(2.5, 0.7, Component::I),
            ],
        )
        .unwrap();
        let text = render(|w| write_labeled_csv(w, &g));
        assert!(text.starts_with("theta,theta_prime,component\n"));
        let back = parse_labeled_csv(&text).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.size(), 2.5);
    }

    #[test]
    fn labeled_errors_name_the_line() {
        let err = parse_labeled_csv("theta,theta_prime,component\n0.1,0.2,W\n0.3,x,W\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: label `x` is not a finite nonnegative number");
        assert!(parse_labeled_csv("a,b,c\n").is_err());
        assert!(parse_labeled_csv("").is_err());
        assert!(parse_labeled_csv("theta,theta_prime,component\n0.1,0.2,Q\n").is_err());
        assert!(parse_labeled_csv("theta,theta_prime,component\n0.1,0.2,W\n0.2,0.1,W\n").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = UnlabeledGraph::from_edges([(0, 1), (1, 2), (2, 2)]);
        let text = render(|w| write_edge_list(w, &g));
        assert_eq!(text, "1 2\n2 3\n3 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert_eq!(parse_edge_list("# comment\n\n5 9\n").unwrap(), UnlabeledGraph::from_edges([(0, 1)]));
        assert!(parse_edge_list("0 1\n").is_err());
        assert!(parse_edge_list("1 2 3\n").is_err());
        assert!(parse_edge_list("1 -2\n").is_err());
        assert!(parse_edge_list("").unwrap().is_empty());
    }

    #[test]
    fn pixel_round_trip() {
        let pg = PixelGraphon::new(2, 0.5, vec![0.0, 1.0, 1.0, 0.25]).unwrap();
        let text = render(|w| write_pixel_csv(w, &pg));
        assert_eq!(text, "cellwidth=0.5\n0,1\n1,0.25\n");
        assert_eq!(parse_pixel_csv(&text).unwrap(), pg);
        assert!(parse_pixel_csv("cellwidth=0.5\n0,1\n").is_err());
        assert!(parse_pixel_csv("cellwidth=0.5\n0,1\n0,0\n").is_err());
        assert!(parse_pixel_csv("width=0.5\n0\n").is_err());
        assert!(parse_pixel_csv("cellwidth=0.5\n").is_err());
    }

    #[test]
    fn pgm_is_inverted_grey() {
        let pg = PixelGraphon::new(2, 1.0, vec![0.0, 1.0, 1.0, 0.5]).unwrap();
        assert_eq!(render(|w| write_pgm(w, &pg)), "P2\n2 2\n255\n255 0\n0 128\n");
    }

    #[test]
    fn sequence_blocks() {
        let g = LabeledGraph::new(
            4.0,
            vec![LabeledEdge::new(1.0, 3.0, Component::W), LabeledEdge::new(2.0, 2.5, Component::W)],
        )
        .unwrap();
        let seq = graphex_core::sequence::graph_sequence(&g);
        assert_eq!(
            render(|w| write_sequence(w, &seq)),
            "# step 1 @ tau=2.5000000000000000\n1 2\n# step 2 @ tau=3.0000000000000000\n3 4\n"
        );
        assert_eq!(render(|w| write_sequence(w, &seq.without_jump_times())), "# step 1\n1 2\n# step 2\n3 4\n");
    }

    #[test]
    fn manifest_round_trip() {
        let m = Manifest {
            command: "simulate".into(),
            seed: 7,
            size: Some(15.0),
            epsilon: Some(1e-3),
            counts: Some(ComponentCounts { w: 3, s: 2, i: 1 }),
            edges: 6,
            vertices: 9,
            ..Manifest::default()
        };
        let text = render(|w| write_manifest(w, &m));
        assert!(!text.contains("\"p\""));
        assert!(text.contains("\"W\": 3"));
        assert_eq!(parse_manifest(&text).unwrap(), m);
    }

    #[test]
    fn report_fields_are_quoted_when_needed() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
