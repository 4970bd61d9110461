//! Implementations of the subcommands.

use crate::output::{pretty, Cell, Sink, Table};
use serde_json::{json, Value};
use std::path::Path;
use zdscheme::ball_scheme::{self, schur, BlockIndex};
use zdscheme::coding::{self, Classes, Code, Direction};
use zdscheme::dual_fourier::Carrier;
use zdscheme::phase::{CycloSum, Phased};
use zdscheme::rational::{self, Rational};
use zdscheme::report::{self, Check};
use zdscheme::verify::{self, Options};
use zdscheme::wavelet_lp::{self, WaveletLabel};
use zdscheme::{metric_scheme, ChainedGroup, Error};

/// Failure that maps to an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Spec, argument or I/O problem (exit 2).
    Input(String),
    /// At least one identity check failed (exit 1).
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Input(format!("I/O error: {e}"))
    }
}

fn rat(r: &Rational) -> Cell {
    Cell::Text(rational::fmt(r))
}

fn rats(v: &[Rational]) -> Value {
    json!(v.iter().map(rational::fmt).collect::<Vec<_>>())
}

fn block_label((r, i): (usize, usize)) -> String {
    format!("{r}:{i}")
}

/// Exact text of a cyclotomic sum: `p/q` when rational, else
/// `mag@phase` terms joined by `+`.
fn cyclo_text(s: &CycloSum) -> String {
    if let Some(r) = s.as_rational() {
        return rational::fmt(&r);
    }
    s.export_terms()
        .iter()
        .map(|t| format!("{}@{}", t.magnitude, t.phase))
        .collect::<Vec<_>>()
        .join("+")
}

fn cyclo_cells(s: &CycloSum) -> Vec<Cell> {
    let z = s.to_complex();
    vec![Cell::Text(cyclo_text(s)), Cell::complex(z.re, z.im)]
}

fn phased_cells(p: &Phased) -> Vec<Cell> {
    let t = p.export_term();
    let z = p.to_complex();
    vec![Cell::Text(t.magnitude), Cell::Text(t.phase), Cell::complex(z.re, z.im)]
}

fn matrix(rows: &[Vec<Rational>], row_name: &str) -> Table {
    let n = rows.first().map_or(0, Vec::len);
    let mut t = Table::new(std::iter::once(row_name.to_string()).chain((0..n).map(|k| k.to_string())));
    for (i, row) in rows.iter().enumerate() {
        let mut cells = vec![Cell::from(i)];
        cells.extend(row.iter().map(rat));
        t.push(cells);
    }
    t
}

fn block_table(t: &mut Table, name: &str, rows: &BlockIndex, cols: &BlockIndex, m: &[Vec<Phased>]) {
    for (a, row) in m.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            let mut cells = vec![
                Cell::from(name),
                Cell::Text(block_label(rows.label(a))),
                Cell::Text(block_label(cols.label(b))),
            ];
            cells.extend(phased_cells(v));
            t.push(cells);
        }
    }
}

/// Writes P, Q, valencies, intersection tensors, block tables and the
/// Schur-ring tables.
pub fn tables(c: &Carrier, sink: &mut Sink) -> Result<(), Failure> {
    let g = &c.group;
    let h = c.hat();
    sink.table("p_table", &matrix(&metric_scheme::p_closed(c), "radius"))?;
    sink.table("q_table", &matrix(&metric_scheme::q_closed(c), "dual_radius"))?;

    let bi = BlockIndex::new(g);
    let hi = BlockIndex::new(h);
    let mut val = Table::new(["scheme", "class", "valency"]);
    for (r, v) in metric_scheme::valencies(g).iter().enumerate() {
        val.push(vec!["sphere".into(), Cell::from(r), rat(v)]);
    }
    for &l in bi.labels() {
        val.push(vec![
            "block".into(),
            Cell::Text(block_label(l)),
            rat(&ball_scheme::block_valency(g, l)),
        ]);
    }
    sink.table("valencies", &val)?;

    let mut int = Table::new(["scheme", "a", "b", "c", "value"]);
    for (a, b, k, v) in metric_scheme::intersection_tensor_closed(g).nonzero() {
        int.push(vec!["sphere".into(), a.into(), b.into(), k.into(), rat(v)]);
    }
    for (a, b, k, v) in ball_scheme::intersection_tensor_closed(g).nonzero() {
        int.push(vec![
            "block".into(),
            Cell::Text(block_label(bi.label(a))),
            Cell::Text(block_label(bi.label(b))),
            Cell::Text(block_label(bi.label(k))),
            rat(v),
        ]);
    }
    sink.table("intersections", &int)?;

    let mut bt = Table::new(["table", "row", "col", "magnitude", "phase", "value"]);
    block_table(&mut bt, "P", &bi, &hi, &ball_scheme::p_closed(c));
    block_table(&mut bt, "Q", &hi, &bi, &ball_scheme::q_closed(c));
    sink.table("block_tables", &bt)?;

    let mut st = Table::new(["kind", "i", "j", "k", "exact", "value"]);
    match schur::SchurRing::new(c) {
        Ok(s) => {
            let al = |a: usize| Cell::Text(block_label(s.alpha[a]));
            let be = |b: usize| Cell::Text(block_label(s.beta[b]));
            for a in 0..s.dim() {
                for b in 0..s.beta.len() {
                    let v = CycloSum::from_phased(g.exponent(), &s.pi[a][b]);
                    let mut cells = vec!["pi".into(), al(a), be(b), "".into()];
                    cells.extend(cyclo_cells(&v));
                    st.push(cells);
                }
            }
            for b in 0..s.beta.len() {
                for a in 0..s.dim() {
                    let mut cells = vec!["kappa".into(), be(b), al(a), "".into()];
                    cells.extend(cyclo_cells(&s.kappa[b][a]));
                    st.push(cells);
                }
            }
            for a1 in 0..s.dim() {
                for a2 in 0..s.dim() {
                    for (a3, v) in s.convolution_constants(a1, a2).iter().enumerate() {
                        if !v.is_zero() {
                            let mut cells = vec!["alpha_product".into(), al(a1), al(a2), al(a3)];
                            cells.extend(cyclo_cells(v));
                            st.push(cells);
                        }
                    }
                }
            }
            for b1 in 0..s.beta.len() {
                for b2 in 0..s.beta.len() {
                    for (b3, v) in s.dual_convolution_constants(b1, b2).iter().enumerate() {
                        if !v.is_zero() {
                            let mut cells = vec!["beta_product".into(), be(b1), be(b2), be(b3)];
                            cells.extend(cyclo_cells(v));
                            st.push(cells);
                        }
                    }
                }
            }
        }
        Err(Error::Unsupported(why)) => {
            st.push(vec![
                "unsupported".into(),
                "".into(),
                "".into(),
                "".into(),
                Cell::Text(why.to_string()),
                Cell::complex(0.0, 0.0),
            ]);
        }
        Err(e) => return Err(e.into()),
    }
    sink.table("schur", &st)?;
    Ok(())
}

/// Runs every suite and returns the JSON report.
pub fn verify(c: &Carrier, o: &Options) -> (Value, bool) {
    let r = verify::run(c, o);
    let passed = r.passed;
    (serde_json::to_value(&r).expect("report serializes"), passed)
}

/// Writes the wavelet basis matrix and its Gram check.
pub fn wavelets(c: &Carrier, sink: &mut Sink, tol: f64) -> Result<Check, Failure> {
    let g = &c.group;
    let basis = wavelet_lp::wavelet_basis(c)?;
    let mut t = Table::new(
        ["kind", "r", "j", "z"]
            .into_iter()
            .map(String::from)
            .chain((0..g.order()).map(|x| format!("x{x}"))),
    );
    for (a, label) in basis.labels.iter().enumerate() {
        let mut cells: Vec<Cell> = match *label {
            WaveletLabel::Haar { r, j, z } => vec!["haar".into(), r.into(), j.into(), z.into()],
            WaveletLabel::Constant => vec!["constant".into(), "".into(), "".into(), "".into()],
        };
        cells.extend(basis.function(c, a).iter().map(|v| Cell::complex(v.re, v.im)));
        t.push(cells);
    }
    let gram = wavelet_lp::gram_check(c, &basis, tol);
    sink.table("wavelet_basis", &t)?;
    sink.json("wavelet_gram", &serde_json::to_value(&gram).expect("check serializes"))?;
    Ok(gram)
}

/// Parses `"a,b;c,d"` into element indices.
pub fn parse_elements(g: &ChainedGroup, text: &str) -> Result<Vec<usize>, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(vec![]);
    }
    text.split(';')
        .enumerate()
        .map(|(k, item)| {
            let residues = item
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Input(format!("element {k} \"{item}\": {e}")))?;
            g.index_of(&residues)
                .map_err(|e| Failure::Input(format!("element {k} \"{item}\": {e}")))
        })
        .collect()
}

fn residues(g: &ChainedGroup, xs: &[usize]) -> Value {
    json!(xs.iter().map(|&x| g.residues(x)).collect::<Vec<_>>())
}

/// Weight distributions of a subgroup code and its dual, with MacWilliams,
/// Delsarte and Poisson checks.
pub fn codes(c: &Carrier, code: &Code, tol: f64, seed: u64) -> Result<(Value, bool), Failure> {
    use rand::SeedableRng;
    let g = &c.group;
    let h = c.hat();
    let dual = coding::dual_code(c, code);
    let m = coding::weight_distribution(g, &code.members, Classes::Spheres);
    let m_hat = coding::macwilliams(c, &m, Direction::ToDual)?;
    let m_hat_direct = coding::weight_distribution(h, &dual.members, Classes::Spheres);
    let back = coding::macwilliams(c, &m_hat, Direction::FromDual)?;
    let mb = coding::weight_distribution(g, &code.members, Classes::Blocks);
    let mb_hat = coding::macwilliams_blocks(c, &mb)?;
    let mb_hat_direct = coding::weight_distribution(h, &dual.members, Classes::Blocks);
    let delsarte = coding::delsarte_check(c, &code.members)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let f = wavelet_lp::random_rational_function(g.order(), &mut rng);
    let poisson = coding::poisson_deviation(c, code, &f)?;

    let checks = vec![
        Check::exact("macwilliams", m_hat == m_hat_direct, "sphere distribution of the dual"),
        Check::exact("macwilliams_inverse", back == m, "round trip"),
        Check::exact("macwilliams_blocks", mb_hat == mb_hat_direct, "block distribution of the dual"),
        Check::exact(
            "size_duality",
            code.len() * dual.len() == g.order(),
            format!("|Y| = {}, |Y^perp| = {}", code.len(), dual.len()),
        ),
        Check::exact(
            "delsarte",
            delsarte.iter().all(|v| v >= &rational::int(0)),
            "nonnegative",
        ),
        Check::numeric("poisson", poisson, tol, format!("seed {seed}")),
    ];
    let passed = report::all_passed(&checks);
    let bi = BlockIndex::new(g);
    let hi = BlockIndex::new(h);
    let v = json!({
        "group": g.label(),
        "code": {
            "generators": residues(g, &code.generators),
            "members": residues(g, &code.members),
            "size": code.len(),
            "min_distance": code.min_distance(g),
        },
        "dual": {
            "members": residues(h, &dual.members),
            "size": dual.len(),
        },
        "m": rats(&m),
        "m_hat": rats(&m_hat),
        "m_hat_direct": rats(&m_hat_direct),
        "blocks": bi.labels().iter().map(|&l| block_label(l)).collect::<Vec<_>>(),
        "dual_blocks": hi.labels().iter().map(|&l| block_label(l)).collect::<Vec<_>>(),
        "m_blocks": rats(&mb),
        "m_hat_blocks": rats(&mb_hat),
        "delsarte": rats(&delsarte),
        "checks": checks,
        "passed": passed,
    });
    Ok((v, passed))
}

/// Writes `name.json` into `dir` when given and echoes it to stdout.
pub fn emit(dir: Option<&Path>, name: &str, v: &Value) -> Result<(), Failure> {
    if let Some(d) = dir {
        let mut sink = Sink::new(d, crate::output::Format::Json)?;
        sink.json(name, v)?;
    }
    print!("{}", pretty(v));
    Ok(())
}
