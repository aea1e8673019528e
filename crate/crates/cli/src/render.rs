//! Marked Dynkin diagrams as ASCII art, JSON and TeX picture code.
//!
//! Node ids in every output follow the selected [`Labelling`].

use std::fmt::Write;

use kantor_core::admissibility::params;
use kantor_core::root_system::{from_bourbaki, to_bourbaki};
use kantor_core::{DiagramType, Error, Marking, NodeSet, PairParameters, Result, RootSystem};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Labelling {
    /// Bourbaki away from E; for E_n the chain is `1..n-1` and node `n`
    /// hangs off node 3.
    #[default]
    Standard,
    Bourbaki,
}

impl Labelling {
    /// 0-based internal index to the printed id.
    pub fn show(self, ty: DiagramType, i: usize) -> usize {
        match self {
            Labelling::Standard => i + 1,
            Labelling::Bourbaki => to_bourbaki(ty, i + 1),
        }
    }

    /// Printed id to the 0-based internal index.
    pub fn read(self, ty: DiagramType, id: usize) -> Result<usize> {
        if id == 0 || id > ty.rank {
            return Err(Error::NodeOutOfRange(id));
        }
        Ok(match self {
            Labelling::Standard => id - 1,
            Labelling::Bourbaki => from_bourbaki(ty, id) - 1,
        })
    }

    pub fn show_set(self, ty: DiagramType, s: NodeSet) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|i| self.show(ty, i)).collect();
        v.sort_unstable();
        v
    }

    pub fn read_set(self, ty: DiagramType, ids: &[usize]) -> Result<NodeSet> {
        ids.iter().try_fold(NodeSet::EMPTY, |acc, &id| Ok(acc.with(self.read(ty, id)?)))
    }

    /// `{1,5}` style, in printed ids.
    pub fn fmt_set(self, ty: DiagramType, s: NodeSet) -> String {
        let ids: Vec<String> = self.show_set(ty, s).iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", ids.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Json,
    Tex,
}

#[derive(Clone, Copy, Debug)]
pub struct RenderSpec {
    pub format: Format,
    /// Also show which nodes the lowest root attaches to.
    pub include_extended: bool,
    pub include_params: bool,
    pub labelling: Labelling,
}

/// One edge of the diagram: endpoints, bond multiplicity and where the
/// arrow points. `arrow` is `1` when it points at the second endpoint
/// (the shorter root), `-1` at the first, `0` for simple bonds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Edge {
    i: usize,
    j: usize,
    mult: i64,
    arrow: i64,
}

fn edges(rs: &RootSystem) -> Vec<Edge> {
    let n = rs.rank();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mult = rs.cartan[i][j] * rs.cartan[j][i];
            if mult == 0 {
                continue;
            }
            let arrow = (rs.gram[i][i] - rs.gram[j][j]).signum();
            out.push(Edge { i, j, mult, arrow });
        }
    }
    out
}

/// JSON form of a marked diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub labelling: Labelling,
    pub nodes: Vec<usize>,
    /// `[i, j, multiplicity, arrow]` with the arrow code of the edge type.
    pub edges: Vec<[i64; 4]>,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extended: Option<Vec<usize>>,
    pub params: PairParameters,
    pub label: String,
}

impl DiagramJson {
    pub fn new(rs: &RootSystem, m: &Marking, label: &str, spec: &RenderSpec) -> Self {
        let ty = rs.ty;
        let lab = spec.labelling;
        let mut es: Vec<[i64; 4]> = edges(rs)
            .into_iter()
            .map(|e| {
                let (a, b) = (lab.show(ty, e.i), lab.show(ty, e.j));
                if a < b {
                    [a as i64, b as i64, e.mult, e.arrow]
                } else {
                    [b as i64, a as i64, e.mult, -e.arrow]
                }
            })
            .collect();
        es.sort_unstable();
        DiagramJson {
            ty: ty.to_string(),
            labelling: lab,
            nodes: (1..=ty.rank).collect(),
            edges: es,
            s: lab.show_set(ty, m.s),
            t: m.t.map(|t| lab.show_set(ty, t)),
            extended: spec.include_extended.then(|| lab.show_set(ty, rs.lowest_neighbours())),
            params: params(rs, m.s, m.t),
            label: label.to_string(),
        }
    }

    /// The marking this document describes.
    pub fn marking(&self) -> Result<Marking> {
        let ty: DiagramType = self.ty.parse()?;
        let s = self.labelling.read_set(ty, &self.s)?;
        Ok(match &self.t {
            None => Marking::kantor(ty, s),
            Some(t) => Marking::sp(ty, s, self.labelling.read_set(ty, t)?),
        })
    }
}

pub fn parse_json(text: &str) -> Result<(Marking, DiagramJson)> {
    let doc: DiagramJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((doc.marking()?, doc))
}

/// Main chain from node 0 to the farthest node, plus at most one node
/// hanging off it (types D and E).
struct Layout {
    path: Vec<usize>,
    hang: Option<(usize, usize)>,
}

fn layout(rs: &RootSystem) -> Layout {
    let n = rs.rank();
    let mut prev = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([0]);
    dist[0] = 0;
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if rs.adjacent(v, w) && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    // first index among the farthest nodes
    let far = (0..n).max_by_key(|&v| (dist[v], std::cmp::Reverse(v))).unwrap();
    let mut path = vec![far];
    while let Some(&v) = path.last() {
        if v == 0 {
            break;
        }
        path.push(prev[v]);
    }
    path.reverse();
    let hang = (0..n).find(|v| !path.contains(v)).map(|v| (v, prev[v]));
    debug_assert!(path.len() + hang.iter().count() == n);
    Layout { path, hang }
}

fn token(m: &Marking, i: usize) -> &'static str {
    let in_t = m.t.is_some_and(|t| t.contains(i));
    match (m.s.contains(i), in_t) {
        (true, true) => "(*o) ",
        (true, false) => " (o) ",
        (false, true) => " *o  ",
        (false, false) => "  o  ",
    }
}

fn bond(e: Option<&Edge>, from: usize) -> &'static str {
    let Some(e) = e else { return "   " };
    // does the arrow point to the right?
    let right = if e.i == from { e.arrow > 0 } else { e.arrow < 0 };
    match (e.mult, right) {
        (1, _) => "---",
        (2, true) => "==>",
        (2, false) => "<==",
        (_, true) => "=3>",
        (_, false) => "<3=",
    }
}

const CELL: usize = 8;

fn ascii(rs: &RootSystem, m: &Marking, lab: Labelling) -> String {
    let ty = rs.ty;
    let es = edges(rs);
    let edge = |a: usize, b: usize| es.iter().find(|e| (e.i, e.j) == (a.min(b), a.max(b)));
    let Layout { path, hang } = layout(rs);
    let mut nodes = String::new();
    let mut ids = String::new();
    for (k, &v) in path.iter().enumerate() {
        nodes.push_str(token(m, v));
        if let Some(&w) = path.get(k + 1) {
            nodes.push_str(bond(edge(v, w), v));
        }
        let col = k * CELL + 2;
        while ids.len() < col {
            ids.push(' ');
        }
        ids.push_str(&lab.show(ty, v).to_string());
    }
    let mut out = format!("{}\n{}\n", nodes.trim_end(), ids.trim_end());
    if let Some((v, at)) = hang {
        let col = path.iter().position(|&p| p == at).unwrap() * CELL;
        let pad = " ".repeat(col);
        writeln!(out, "{pad}  |").unwrap();
        writeln!(out, "{pad}{}", token(m, v).trim_end()).unwrap();
        writeln!(out, "{pad}  {}", lab.show(ty, v)).unwrap();
    }
    out
}

const STEP: i64 = 24;

fn tex(rs: &RootSystem, m: &Marking, lab: Labelling) -> String {
    let ty = rs.ty;
    let Layout { path, hang } = layout(rs);
    let mut pos = vec![(0i64, 0i64); rs.rank()];
    for (k, &v) in path.iter().enumerate() {
        pos[v] = (k as i64 * STEP, 0);
    }
    if let Some((v, at)) = hang {
        pos[v] = (pos[at].0, -STEP);
    }
    let width = (path.len() as i64 - 1) * STEP;
    let depth = if hang.is_some() { STEP } else { 0 };
    let mut out = String::new();
    writeln!(out, "\\setlength{{\\unitlength}}{{1pt}}").unwrap();
    writeln!(out, "\\begin{{picture}}({},{})(-8,{})", width + 16, depth + 24, -depth - 12).unwrap();
    for e in edges(rs) {
        let ((x1, y1), (x2, y2)) = (pos[e.i], pos[e.j]);
        let (a, b) = if (x1, y1) <= (x2, y2) { ((x1, y1), (x2, y2)) } else { ((x2, y2), (x1, y1)) };
        let vertical = a.0 == b.0;
        let len = if vertical { a.1.abs_diff(b.1) } else { a.0.abs_diff(b.0) } as i64;
        let offsets: &[i64] = match e.mult {
            1 => &[0],
            2 => &[-1, 1],
            _ => &[-2, 0, 2],
        };
        for off in offsets {
            if vertical {
                writeln!(out, "\\put({},{}){{\\line(0,1){{{len}}}}}", a.0 + off, b.1.min(a.1)).unwrap();
            } else {
                writeln!(out, "\\put({},{}){{\\line(1,0){{{len}}}}}", a.0, a.1 + off).unwrap();
            }
        }
        if e.arrow != 0 {
            // multiple bonds only occur along the main chain
            let (short, long) = if e.arrow > 0 { (pos[e.j], pos[e.i]) } else { (pos[e.i], pos[e.j]) };
            let glyph = if short.0 > long.0 { "$>$" } else { "$<$" };
            writeln!(out, "\\put({},{}){{\\makebox(0,0){{{glyph}}}}}", (a.0 + b.0) / 2, (a.1 + b.1) / 2).unwrap();
        }
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        writeln!(out, "\\put({x},{y}){{\\circle*{{3}}}}").unwrap();
        if m.s.contains(v) {
            writeln!(out, "\\put({x},{y}){{\\circle{{8}}}}").unwrap();
        }
        if m.t.is_some_and(|t| t.contains(v)) {
            writeln!(out, "\\put({},{}){{\\makebox(0,0){{$\\ast$}}}}", x, y + 8).unwrap();
        }
        writeln!(out, "\\put({x},{}){{\\makebox(0,0){{\\scriptsize {}}}}}", y - 10, lab.show(ty, v)).unwrap();
    }
    writeln!(out, "\\end{{picture}}").unwrap();
    out
}

/// Render `m`. The label names its orbit.
pub fn render(rs: &RootSystem, m: &Marking, label: &str, spec: &RenderSpec) -> String {
    match spec.format {
        Format::Json => {
            let doc = DiagramJson::new(rs, m, label, spec);
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Ascii => {
            let mut out = ascii(rs, m, spec.labelling);
            if spec.include_extended {
                writeln!(out, "lowest root joins {}", spec.labelling.fmt_set(rs.ty, rs.lowest_neighbours())).unwrap();
            }
            if spec.include_params {
                writeln!(out, "{label}").unwrap();
            }
            out
        }
        Format::Tex => {
            let mut out = tex(rs, m, spec.labelling);
            if spec.include_params {
                writeln!(out, "% {label}").unwrap();
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> RootSystem {
        RootSystem::new("E6".parse().unwrap())
    }

    fn spec(format: Format) -> RenderSpec {
        RenderSpec { format, include_extended: false, include_params: true, labelling: Labelling::Standard }
    }

    #[test]
    fn e6_marks_circle_and_asterisk() {
        let rs = e6();
        let m = Marking::sp(rs.ty, NodeSet::singleton(5), NodeSet::singleton(0));
        let out = render(&rs, &m, "E6(20,1,10)", &spec(Format::Ascii));
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], " *o  ---  o  ---  o  ---  o  ---  o");
        assert_eq!(lines[1], "  1       2       3       4       5");
        assert_eq!(lines[2], "                  |");
        assert_eq!(lines[3], "                 (o)");
        assert_eq!(lines[4], "                  6");
        assert_eq!(lines[5], "E6(20,1,10)");
    }

    #[test]
    fn no_t_means_no_asterisks() {
        let rs = e6();
        let out = render(&rs, &Marking::kantor(rs.ty, NodeSet::singleton(0)), "E6(16,0)", &spec(Format::Ascii));
        assert!(!out.contains('*'));
        assert!(out.starts_with(" (o) ---"));
    }

    #[test]
    fn arrows_point_at_short_roots() {
        let b3 = RootSystem::new("B3".parse().unwrap());
        let out = render(&b3, &Marking::kantor(b3.ty, NodeSet::singleton(0)), "", &spec(Format::Ascii));
        assert!(out.starts_with(" (o) ---  o  ==>  o"), "{out}");
        let c3 = RootSystem::new("C3".parse().unwrap());
        let out = render(&c3, &Marking::kantor(c3.ty, NodeSet::singleton(2)), "", &spec(Format::Ascii));
        assert!(out.starts_with("  o  ---  o  <== (o)"), "{out}");
        let g2 = RootSystem::new("G2".parse().unwrap());
        let out = render(&g2, &Marking::kantor(g2.ty, NodeSet::singleton(1)), "", &spec(Format::Ascii));
        assert!(out.starts_with("  o  <3= (o)"), "{out}");
    }

    #[test]
    fn d4_hangs_one_node() {
        let rs = RootSystem::new("D4".parse().unwrap());
        let m = Marking::kantor(rs.ty, NodeSet::singleton(1));
        let out = render(&rs, &m, "", &spec(Format::Ascii));
        assert_eq!(out.lines().count(), 6);
        assert_eq!(out.lines().nth(1).unwrap(), "  1       2       3");
        assert_eq!(out.lines().nth(4).unwrap(), "          4");
    }

    #[test]
    fn json_round_trips() {
        for lab in [Labelling::Standard, Labelling::Bourbaki] {
            for ty in ["E6", "E7", "D5", "B4", "F4", "A1"] {
                let rs = RootSystem::new(ty.parse().unwrap());
                let s = kantor_core::admissibility::close_to_jordan(&rs).unwrap_or(NodeSet::singleton(0));
                for m in [Marking::kantor(rs.ty, s), Marking::sp(rs.ty, s, NodeSet::singleton(0))] {
                    let sp = RenderSpec { labelling: lab, include_extended: true, ..spec(Format::Json) };
                    let text = render(&rs, &m, "x", &sp);
                    let (back, doc) = parse_json(&text).unwrap();
                    assert_eq!(back, m);
                    assert_eq!(doc, DiagramJson::new(&rs, &m, "x", &sp));
                }
            }
        }
    }

    #[test]
    fn json_edges_are_ordered_by_printed_ids() {
        let rs = e6();
        let sp = RenderSpec { labelling: Labelling::Bourbaki, ..spec(Format::Json) };
        let doc = DiagramJson::new(&rs, &Marking::kantor(rs.ty, NodeSet::singleton(0)), "", &sp);
        assert_eq!(doc.edges, vec![[1, 3, 1, 0], [2, 4, 1, 0], [3, 4, 1, 0], [4, 5, 1, 0], [5, 6, 1, 0]]);
    }

    #[test]
    fn bourbaki_relabels_e_only() {
        let e6 = e6().ty;
        assert_eq!(Labelling::Bourbaki.show(e6, 5), 2);
        assert_eq!(Labelling::Bourbaki.read(e6, 2).unwrap(), 5);
        let d5: DiagramType = "D5".parse().unwrap();
        assert_eq!(Labelling::Bourbaki.show(d5, 4), 5);
        assert!(Labelling::Standard.read(d5, 6).is_err());
    }

    #[test]
    fn tex_has_no_preamble() {
        let rs = e6();
        let m = Marking::sp(rs.ty, NodeSet::singleton(5), NodeSet::singleton(0));
        let out = render(&rs, &m, "E6(20,1,10)", &spec(Format::Tex));
        assert!(out.contains("\\begin{picture}") && out.trim_end().ends_with("% E6(20,1,10)"));
        assert!(!out.contains("documentclass"));
        assert_eq!(out.matches("\\circle{8}").count(), 1);
        assert_eq!(out.matches("\\ast").count(), 1);
    }
}
