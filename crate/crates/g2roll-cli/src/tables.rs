//! Table exports: structure constants as JSON, the Killing matrix as CSV
//! and the root diagram as SVG.

use g2roll::g2alg::{root_decomposition, LieAlgebra};
use num_traits::Zero;
use std::fmt::Write as _;
use std::path::Path;

/// `{basis: [names], brackets: [{i, j, coeffs: {name: "p/q"}}]}` for the
/// upper-triangular bracket table.
pub fn brackets_json(algebra: &LieAlgebra) -> String {
    let mut out = String::from("{\"basis\":[");
    for (k, name) in algebra.names.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "\"{name}\"");
    }
    out.push_str("],\"brackets\":[");
    let n = algebra.basis.len();
    let mut first = true;
    for i in 0..n {
        for j in i + 1..n {
            let coeffs: Vec<(usize, String)> = (0..n)
                .filter(|&k| !algebra.structure.at(i, j, k).is_zero())
                .map(|k| (k, algebra.structure.at(i, j, k).to_string()))
                .collect();
            if coeffs.is_empty() {
                continue;
            }
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{{\"i\":{i},\"j\":{j},\"coeffs\":{{");
            for (m, (k, v)) in coeffs.iter().enumerate() {
                if m > 0 {
                    out.push(',');
                }
                let _ = write!(out, "\"{}\":\"{}\"", algebra.names[*k], v);
            }
            out.push_str("}}");
        }
    }
    out.push_str("]}");
    out
}

/// The Killing matrix as bare CSV of exact rationals.
pub fn killing_csv(algebra: &LieAlgebra) -> String {
    let killing = algebra.killing_form();
    let mut out = String::new();
    for i in 0..killing.rows {
        let row: Vec<String> = (0..killing.cols)
            .map(|j| killing.at(i, j).to_string())
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// The root diagram: twelve labelled arrows from the origin, positioned by
/// the exact eigenvalue pairs mapped through the Killing-orthonormal frame.
pub fn roots_svg(algebra: &LieAlgebra) -> Result<String, String> {
    let datum = root_decomposition(algebra).map_err(|e| e.to_string())?;
    let positions = datum.positions();
    let max = positions
        .iter()
        .map(|(x, y)| x.abs().max(y.abs()))
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let size = 420.0;
    let centre = size / 2.0;
    let scale = (size / 2.0 - 40.0) / max;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    out.push_str(
        "<defs><marker id=\"tip\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n",
    );
    let _ = writeln!(
        out,
        "<circle cx=\"{centre}\" cy=\"{centre}\" r=\"2\" fill=\"black\"/>"
    );
    for (root, (x, y)) in datum.roots.iter().zip(&positions) {
        let px = centre + scale * x;
        let py = centre - scale * y;
        let _ = writeln!(
            out,
            "<line x1=\"{centre}\" y1=\"{centre}\" x2=\"{px:.2}\" y2=\"{py:.2}\" stroke=\"black\" stroke-width=\"{}\" marker-end=\"url(#tip)\"/>",
            if root.long { "1.6" } else { "1.0" }
        );
        let lx = centre + (scale * x) * 1.09;
        let ly = centre - (scale * y) * 1.09;
        let _ = writeln!(
            out,
            "<text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
            root.name
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn write_tables(kind: &str, algebra: &LieAlgebra, dir: &Path) -> Result<Vec<String>, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {dir:?}: {e}"))?;
    let mut written = Vec::new();
    let mut emit = |name: &str, contents: String| -> Result<(), String> {
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| format!("cannot write {path:?}: {e}"))?;
        written.push(path.display().to_string());
        Ok(())
    };
    match kind {
        "brackets" => emit("g2_brackets.json", brackets_json(algebra))?,
        "killing" => emit("killing.csv", killing_csv(algebra))?,
        "roots" => emit("roots.svg", roots_svg(algebra)?)?,
        other => {
            return Err(format!(
                "unknown table {other:?} (expected brackets, killing or roots)"
            ))
        }
    }
    Ok(written)
}
