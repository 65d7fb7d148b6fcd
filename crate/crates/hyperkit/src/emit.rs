//! Structure-equation emitters: markdown, LaTeX and JSON renderings of a
//! convolution table, one line per unordered nontrivial product.

use num::traits::One;
use serde::Serialize;

use crate::algebra::{FiniteHypergroup, Slice};
use crate::constructions::GradedHypergroup;
use crate::json;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Latex,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" => Ok(Format::Markdown),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}; expected md, latex or json")),
        }
    }
}

/// "3/4" in markdown, "\tfrac{3}{4}" in LaTeX; integers stay bare.
fn coefficient(v: &Scalar, latex: bool) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else if latex {
        format!("\\tfrac{{{}}}{{{}}}", v.numer(), v.denom())
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Labels of the shape γ3 / ρ1 / h2 / g0 become subscripted symbols; anything
/// else is wrapped in \text with TeX specials escaped.
fn latex_label(label: &str) -> String {
    let subscripted = [("γ", "\\gamma"), ("ρ", "\\rho"), ("h", "h"), ("g", "g")];
    for (prefix, head) in subscripted {
        if let Some(rest) = label.strip_prefix(prefix) {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                return format!("{head}_{{{rest}}}");
            }
        }
    }
    let escaped: String = label
        .chars()
        .map(|c| match c {
            '\\' | '{' | '}' | '_' | '^' | '&' | '%' | '$' | '#' => format!("\\{c}"),
            _ => c.to_string(),
        })
        .collect();
    format!("\\text{{{escaped}}}")
}

fn term(coeff: &Scalar, label: &str, latex: bool) -> String {
    let name = if latex { latex_label(label) } else { label.to_string() };
    if coeff.is_one() {
        name
    } else if latex {
        format!("{}{}", coefficient(coeff, true), name)
    } else {
        format!("{} {}", coefficient(coeff, false), name)
    }
}

fn combination(slice: &Slice, labels: &[String], latex: bool) -> String {
    slice
        .iter()
        .map(|(&k, v)| term(v, &labels[k], latex))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn equation_lines(h: &FiniteHypergroup, latex: bool) -> Vec<String> {
    let n = h.order();
    let e = h.identity();
    let mut lines = Vec::new();
    for i in 0..n {
        if i == e {
            continue;
        }
        for j in i..n {
            if j == e {
                continue;
            }
            let lhs = if latex {
                format!("{} {}", latex_label(h.label(i)), latex_label(h.label(j)))
            } else {
                format!("{} {}", h.label(i), h.label(j))
            };
            lines.push(format!(
                "{lhs} = {}",
                combination(h.slice(i, j), h.labels(), latex)
            ));
        }
    }
    lines
}

/// One line per unordered product of non-identity elements, in element order.
/// `n_big` tags circle/bullet sides in the JSON rendering.
pub fn emit_table(h: &FiniteHypergroup, format: Format, n_big: Option<usize>) -> String {
    match format {
        Format::Markdown => {
            let mut out = equation_lines(h, false).join("\n");
            if !out.is_empty() {
                out.push('\n');
            }
            out
        }
        Format::Latex => {
            let lines = equation_lines(h, true);
            if lines.is_empty() {
                return String::new();
            }
            format!(
                "\\begin{{gather*}}\n{}\n\\end{{gather*}}\n",
                lines.join(",\\\\\n")
            )
        }
        Format::Json => {
            let mut out = json::hypergroup_to_string(h, n_big);
            out.push('\n');
            out
        }
    }
}

#[derive(Serialize)]
struct GradedJson {
    base: json::HypergroupJson,
    grades: Vec<i64>,
}

/// Formal index on a graded element: the two factors carry indices j and l,
/// each product term the sum plus the term's own grade.
fn graded_suffix(offset: i64, latex: bool) -> String {
    let (j, l) = if latex { ("j", "\\ell") } else { ("j", "l") };
    let mut s = format!("{j}+{l}");
    if offset != 0 {
        s.push_str(&format!("{offset:+}"));
    }
    s
}

fn graded_atom(label: &str, index: &str, latex: bool) -> String {
    if latex {
        format!("({}, \\xi_{{{index}}})", latex_label(label))
    } else {
        format!("({label},ξ{index})")
    }
}

/// The graded table's structure equations with symbolic integer indices.
pub fn emit_graded_table(g: &GradedHypergroup, format: Format, n_big: Option<usize>) -> String {
    let h = &g.base;
    if format == Format::Json {
        let data = GradedJson {
            base: json::hypergroup_to_json(h, n_big),
            grades: g.grades.clone(),
        };
        let mut out = serde_json::to_string_pretty(&data).expect("serializable");
        out.push('\n');
        return out;
    }
    let latex = format == Format::Latex;
    let n = h.order();
    let e = h.identity();
    let mut lines = Vec::new();
    for i in 0..n {
        if i == e {
            continue;
        }
        for j in i..n {
            if j == e {
                continue;
            }
            let lhs = format!(
                "{} {}",
                graded_atom(h.label(i), "j", latex),
                graded_atom(h.label(j), if latex { "\\ell" } else { "l" }, latex),
            );
            let rhs = g
                .product(i, 0, j, 0)
                .into_iter()
                .map(|(k, offset, v)| {
                    let atom = graded_atom(h.label(k), &graded_suffix(offset, latex), latex);
                    if v.is_one() {
                        atom
                    } else if latex {
                        format!("{}{}", coefficient(&v, true), atom)
                    } else {
                        format!("{} {}", coefficient(&v, false), atom)
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ");
            lines.push(format!("{lhs} = {rhs}"));
        }
    }
    if lines.is_empty() {
        return String::new();
    }
    if latex {
        format!(
            "\\begin{{gather*}}\n{}\n\\end{{gather*}}\n",
            lines.join(",\\\\\n")
        )
    } else {
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_zq2;
    use crate::scalar::rat;

    #[test]
    fn markdown_line_for_order_two_table() {
        let h = build_zq2(&rat(1, 3)).unwrap();
        assert_eq!(emit_table(&h, Format::Markdown, None), "h1 h1 = 1/3 h0 + 2/3 h1\n");
    }

    #[test]
    fn one_point_table_has_empty_body() {
        let h = FiniteHypergroup::new_validated(
            "pt",
            vec!["e".into()],
            0,
            vec![0],
            vec![vec![[(0usize, crate::scalar::one())].into_iter().collect()]],
        )
        .unwrap();
        assert_eq!(emit_table(&h, Format::Markdown, None), "");
        assert_eq!(emit_table(&h, Format::Latex, None), "");
    }

    #[test]
    fn latex_subscripts_and_fractions() {
        let h = build_zq2(&rat(1, 3)).unwrap();
        let tex = emit_table(&h, Format::Latex, None);
        assert!(tex.contains("h_{1} h_{1} = \\tfrac{1}{3}h_{0} + \\tfrac{2}{3}h_{1}"));
    }

    #[test]
    fn json_emission_round_trips() {
        let h = build_zq2(&rat(2, 5)).unwrap();
        let text = emit_table(&h, Format::Json, None);
        let back = crate::json::hypergroup_from_str(&text).unwrap();
        assert!(crate::algebra::isomorphic(&h, &back).is_some());
        for i in 0..h.order() {
            for j in 0..h.order() {
                assert_eq!(h.slice(i, j), back.slice(i, j));
            }
        }
    }
}
