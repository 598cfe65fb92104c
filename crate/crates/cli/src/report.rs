//! The analysis report and its text, JSON, CSV and LaTeX renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use recip_core::algebra::echelon_basis;
use recip_core::ideal::component_zero_forms;
use recip_core::{
    ambient_reduction, automorphism_group, classify::classify_parts, derived_graph,
    pencil_properties, segre_symbol, ColouredGraph, GraphJson, LinearForm, Parametrization,
};
use serde::{Deserialize, Serialize};

use crate::config::Settings;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    /// Input file or family name.
    pub source: String,
    pub graph: GraphJson,
    pub n: usize,
    pub vertex_colours: usize,
    pub edge_colours: usize,
    pub connected: bool,
    pub automorphism_order: u128,
    pub symmetry: SymmetrySection,
    pub linear: LinearSection,
    /// Present only when degree two was requested.
    pub quadratic: Option<QuadraticSection>,
    /// Present only for uniform graphs.
    pub pencil: Option<PencilSection>,
    pub derived_graph: DerivedSection,
    pub ambient: AmbientSection,
    /// Milliseconds per stage; present only when requested.
    pub timings: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrySection {
    /// Pair orbits of the automorphism group.
    pub s: usize,
    pub dim_symmetry_span: usize,
    pub dim_with_component_zeros: usize,
    pub induced: bool,
    pub symmetric_only: bool,
    /// Forms completing the symmetry and component-zero forms to the linear part.
    pub extra_generators: Vec<String>,
    pub r: Option<usize>,
    pub s_equals_r: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSection {
    pub dimension: usize,
    /// Reduced echelon basis.
    pub generators: Vec<String>,
    /// Forms with at most two terms in the linear part.
    pub binomials: Vec<String>,
    pub component_zeros: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSection {
    pub full_dim: usize,
    pub products_dim: usize,
    pub minimal_count: usize,
    pub free_variables: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilSection {
    pub r: usize,
    pub segre_symbol: String,
    pub multiplicities: Vec<usize>,
    pub deg_reciprocal: usize,
    pub mld: usize,
    pub rmld: Option<usize>,
    pub n_linear: usize,
    pub n_quadratic: usize,
    /// The degree fields are closed-form values in `r`, not computed degrees.
    pub from_closed_form: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedSection {
    pub graph: GraphJson,
    pub vertex_classes: Vec<Vec<usize>>,
    pub edge_classes: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientSection {
    pub dim_l: usize,
    pub dim_lprime: usize,
    pub dim_lperp: usize,
    pub dim_lperp_prime: usize,
    pub span_full: bool,
    pub l_in_lprime: bool,
}

pub struct AnalyzeOptions {
    pub quadratics: bool,
    pub timings: bool,
}

struct Stopwatch {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, u64>,
}

impl Stopwatch {
    fn lap(&mut self, name: &str) {
        if self.on {
            let now = Instant::now();
            self.laps
                .insert(name.to_string(), (now - self.last).as_millis() as u64);
            self.last = now;
        }
    }
}

fn strings(forms: &[LinearForm]) -> Vec<String> {
    forms.iter().map(ToString::to_string).collect()
}

/// Vertex lists and edge lists, one per colour.
pub type ColourClasses = (Vec<Vec<usize>>, Vec<Vec<(usize, usize)>>);

/// Colour classes of `g` as vertex lists and edge lists, ordered by colour id.
pub fn colour_classes(g: &ColouredGraph) -> ColourClasses {
    let mut vertices = vec![Vec::new(); g.num_vertex_colours()];
    for v in 1..=g.n() {
        vertices[g.vertex_colour(v) - 1].push(v);
    }
    let mut edges = vec![Vec::new(); g.num_edge_colours()];
    for (u, v, c) in g.edges() {
        edges[c - 1 - g.num_vertex_colours()].push((u, v));
    }
    (vertices, edges)
}

/// Full pipeline on one graph.
pub fn analyze(
    source: &str,
    g: &ColouredGraph,
    settings: &Settings,
    opts: &AnalyzeOptions,
) -> Result<ReportDocument, CliError> {
    let mut clock = Stopwatch {
        on: opts.timings,
        last: Instant::now(),
        laps: BTreeMap::new(),
    };
    let limits = &settings.limits;
    let group = automorphism_group(g, limits)?;
    clock.lap("automorphisms");
    let par = Parametrization::new(g, limits)?;
    clock.lap("adjugate");
    let linear = par.linear_part();
    clock.lap("linear_part");
    let verdict = classify_parts(g, &group.pair_orbits(), &linear)?;
    clock.lap("classify");
    let quadratic = if opts.quadratics {
        let q = par.quadratic_part(&linear);
        clock.lap("quadratic_part");
        Some(QuadraticSection {
            full_dim: q.full_dim,
            products_dim: q.products_dim,
            minimal_count: q.minimal_count,
            free_variables: q
                .free_variables
                .iter()
                .map(|&p| par.space().var_name(p))
                .collect(),
            generators: q.representatives.iter().map(ToString::to_string).collect(),
        })
    } else {
        None
    };
    let pencil = if g.is_uniform() {
        let p = pencil_properties(g)?;
        let segre = segre_symbol(g)?;
        Some(PencilSection {
            r: p.r,
            segre_symbol: segre.to_string(),
            multiplicities: segre.multiplicities(),
            deg_reciprocal: p.deg_reciprocal,
            mld: p.mld,
            rmld: p.rmld,
            n_linear: p.n_linear,
            n_quadratic: p.n_quadratic,
            from_closed_form: p.from_closed_form,
        })
    } else {
        None
    };
    let derived = derived_graph(g, &group)?;
    let (vertex_classes, edge_classes) = colour_classes(&derived);
    let amb = ambient_reduction(g, &group);
    clock.lap("derived_and_ambient");

    let len = par.space().len();
    let generators: Vec<LinearForm> = echelon_basis(len, linear.coefficient_rows())
        .into_iter()
        .map(|v| LinearForm::from_coeffs(g.n(), v).normalized())
        .collect();
    Ok(ReportDocument {
        source: source.to_string(),
        graph: GraphJson::from(g),
        n: g.n(),
        vertex_colours: g.num_vertex_colours(),
        edge_colours: g.num_edge_colours(),
        connected: g.is_connected(),
        automorphism_order: group.order,
        symmetry: SymmetrySection {
            s: verdict.s,
            dim_symmetry_span: verdict.dim_symmetry_span,
            dim_with_component_zeros: verdict.dim_with_component_zeros,
            induced: verdict.induced,
            symmetric_only: verdict.symmetric_only,
            extra_generators: strings(&verdict.extra_generators),
            r: verdict.r,
            s_equals_r: verdict.s_equals_r,
        },
        linear: LinearSection {
            dimension: linear.dimension,
            generators: strings(&generators),
            binomials: strings(&par.binomial_forms()),
            component_zeros: strings(&component_zero_forms(g)),
        },
        quadratic,
        pencil,
        derived_graph: DerivedSection {
            graph: GraphJson::from(&derived),
            vertex_classes,
            edge_classes,
        },
        ambient: AmbientSection {
            dim_l: amb.dim_l,
            dim_lprime: amb.dim_lprime,
            dim_lperp: amb.dim_lperp,
            dim_lperp_prime: amb.dim_lperp_prime,
            span_full: amb.span_full,
            l_in_lprime: amb.l_in_lprime,
        },
        timings: opts.timings.then_some(clock.laps),
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn class_list(vertices: &[Vec<usize>], edges: &[Vec<(usize, usize)>]) -> (String, String) {
    let v: Vec<String> = vertices
        .iter()
        .map(|c| {
            format!(
                "{{{}}}",
                c.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    let e: Vec<String> = edges
        .iter()
        .map(|c| {
            let pairs: Vec<String> = c.iter().map(|(a, b)| format!("{a}{b}")).collect();
            format!("{{{}}}", pairs.join(","))
        })
        .collect();
    (v.join(" "), e.join(" "))
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = self.graph.to_graph().expect("report graph is valid");
        let (gv, ge) = class_list(&colour_classes(&g).0, &colour_classes(&g).1);
        let sym = &self.symmetry;
        let _ = writeln!(out, "graph         {}", self.source);
        let _ = writeln!(
            out,
            "vertices      {} ({} vertex colours, {} edge colours, {})",
            self.n,
            self.vertex_colours,
            self.edge_colours,
            if self.connected {
                "connected"
            } else {
                "disconnected"
            }
        );
        let _ = writeln!(out, "vertex classes {gv}");
        let _ = writeln!(
            out,
            "edge classes   {}",
            if ge.is_empty() { "-" } else { &ge }
        );
        let _ = writeln!(out, "|Aut(G)|      {}", self.automorphism_order);
        let _ = writeln!(out, "pair orbits s {}", sym.s);
        let _ = writeln!(out);
        let _ = writeln!(out, "linear part   dimension {}", self.linear.dimension);
        for f in &self.linear.generators {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(out, "binomials     {}", self.linear.binomials.len());
        for f in &self.linear.binomials {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "symmetry span {} / with component zeros {} / linear part {}",
            sym.dim_symmetry_span, sym.dim_with_component_zeros, self.linear.dimension
        );
        let _ = writeln!(out, "induced       {}", sym.induced);
        let _ = writeln!(out, "symmetric only {}", sym.symmetric_only);
        if !sym.extra_generators.is_empty() {
            let _ = writeln!(out, "extra generators");
            for f in &sym.extra_generators {
                let _ = writeln!(out, "  {f}");
            }
        }
        if let Some(q) = &self.quadratic {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "degree two    dim I2 {} = products {} + minimal {}",
                q.full_dim, q.products_dim, q.minimal_count
            );
            let _ = writeln!(out, "free variables {}", q.free_variables.join(" "));
            for f in &q.generators {
                let _ = writeln!(out, "  {f}");
            }
        }
        if let Some(p) = &self.pencil {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "pencil        r = {}, Segre symbol {}",
                p.r, p.segre_symbol
            );
            let _ = writeln!(
                out,
                "closed form   deg {} / mld {} / rmld {} / linear {} / quadratic {}",
                p.deg_reciprocal,
                p.mld,
                opt(&p.rmld),
                p.n_linear,
                p.n_quadratic
            );
            let _ = writeln!(out, "s = r         {}", opt(&sym.s_equals_r));
        }
        let (dv, de) = class_list(
            &self.derived_graph.vertex_classes,
            &self.derived_graph.edge_classes,
        );
        let _ = writeln!(out);
        let _ = writeln!(out, "G' vertex classes {dv}");
        let _ = writeln!(
            out,
            "G' edge classes   {}",
            if de.is_empty() { "-" } else { &de }
        );
        let a = &self.ambient;
        let _ = writeln!(
            out,
            "ambient       dim L {} / dim L' {} / dim L^perp {} / dim L^perp in L' {} / span full {} / L in L' {}",
            a.dim_l, a.dim_lprime, a.dim_lperp, a.dim_lperp_prime, a.span_full, a.l_in_lprime
        );
        if let Some(t) = &self.timings {
            let _ = writeln!(out);
            for (stage, ms) in t {
                let _ = writeln!(out, "time {stage:<20} {ms} ms");
            }
        }
        out
    }

    pub const CSV_HEADER: &'static str = "source,n,vertex_colours,edge_colours,automorphism_order,s,r,deg_reciprocal,mld,rmld,n_linear_formula,n_quadratic_formula,dim_linear,minimal_quadratic,induced,symmetric_only,extra_generators";

    pub fn to_csv(&self) -> String {
        let p = self.pencil.as_ref();
        let cell = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        let fields = [
            csv_quote(&self.source),
            self.n.to_string(),
            self.vertex_colours.to_string(),
            self.edge_colours.to_string(),
            self.automorphism_order.to_string(),
            self.symmetry.s.to_string(),
            cell(self.symmetry.r),
            cell(p.map(|p| p.deg_reciprocal)),
            cell(p.map(|p| p.mld)),
            cell(p.and_then(|p| p.rmld)),
            cell(p.map(|p| p.n_linear)),
            cell(p.map(|p| p.n_quadratic)),
            self.linear.dimension.to_string(),
            cell(self.quadratic.as_ref().map(|q| q.minimal_count)),
            self.symmetry.induced.to_string(),
            self.symmetry.symmetric_only.to_string(),
            self.symmetry.extra_generators.len().to_string(),
        ];
        format!("{}\n{}\n", Self::CSV_HEADER, fields.join(","))
    }

    /// A three-column table: the graph, the linear generators with the extra
    /// ones underlined, and `G′`.
    pub fn to_latex(&self) -> String {
        let g = self.graph.to_graph().expect("report graph is valid");
        let (gv, ge) = colour_classes(&g);
        let mut forms: Vec<String> = Vec::new();
        let extra: Vec<&String> = self.symmetry.extra_generators.iter().collect();
        for f in &self.linear.generators {
            forms.push(format!("${}$", latex_form(f)));
        }
        for f in extra {
            forms.push(format!("\\underline{{${}$}}", latex_form(f)));
        }
        if forms.is_empty() {
            forms.push("None.".into());
        }
        let mut out = String::new();
        out.push_str(
            "\\begin{tabular}{|c|c|c|}\n\\hline\n$G$ & Linear Forms & $G'$\\\\\n\\hline\n",
        );
        let _ = writeln!(
            out,
            "{} & \\begin{{tabular}}{{c}}{}\\end{{tabular}} & {}\\\\",
            latex_classes(&gv, &ge),
            forms.join("\\\\ "),
            latex_classes(
                &self.derived_graph.vertex_classes,
                &self.derived_graph.edge_classes
            )
        );
        out.push_str("\\hline\n\\end{tabular}\n");
        out
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `x13 - 2*x5_10` as `x_{13} - 2x_{5,10}`.
pub fn latex_form(f: &str) -> String {
    let mut out = String::new();
    let mut chars = f.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'x' => {
                let mut idx = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() || d == '_' {
                        idx.push(if d == '_' { ',' } else { d });
                        chars.next();
                    } else {
                        break;
                    }
                }
                let _ = write!(out, "x_{{{idx}}}");
            }
            '*' => {}
            _ => out.push(c),
        }
    }
    out
}

fn latex_classes(vertices: &[Vec<usize>], edges: &[Vec<(usize, usize)>]) -> String {
    let (v, e) = class_list(vertices, edges);
    let esc = |s: String| s.replace('{', "\\{").replace('}', "\\}");
    let mut out = format!("\\begin{{tabular}}{{c}}$V$: ${}$", esc(v));
    if !e.is_empty() {
        let _ = write!(out, "\\\\ $E$: ${}$", esc(e));
    }
    out.push_str("\\end{tabular}");
    out
}
