//! Graph and certificate loading.
//!
//! A graph argument is either a file or a builtin spec. Files holding a JSON
//! document are dispatched on their `kind`; anything else is read as DIMACS.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qprod::format::{from_json, Document};
use qprod::{BlockAlgebra, ClassicalGraph, ColoringCertificate, HomomorphismCertificate, QuantumGraph};

pub const SPEC_HELP: &str = "\
graph arguments are a file (JSON document or DIMACS) or a builtin:
  K<n>  C<n>  P<n>  E<n>      complete, cycle, path, edgeless
  petersen  kneser:<c>:<b>  random:<n>:<p>:<seed>
  complete-full:<n>           complete quantum graph over M_n
  complete-amp:<d>:<k>        complete quantum graph over C·I_d ⊗ M_k
  complete-diag:<n>           complete quantum graph over the diagonal algebra";

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

fn number(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| anyhow!("{what}: '{s}' is not a nonnegative integer"))
}

fn positive(s: &str, what: &str) -> Result<usize> {
    match number(s, what)? {
        0 => bail!("{what} must be positive"),
        n => Ok(n),
    }
}

fn builtin_classical(spec: &str) -> Result<Option<ClassicalGraph>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let g = match parts.as_slice() {
        ["petersen"] => ClassicalGraph::petersen(),
        ["kneser", c, b] => {
            let (c, b) = (positive(c, "c")?, positive(b, "b")?);
            if b > c {
                bail!("kneser:{c}:{b} needs b ≤ c");
            }
            ClassicalGraph::kneser(c, b)
        }
        ["random", n, p, seed] => {
            let p: f64 = p.parse().map_err(|_| anyhow!("random: '{p}' is not a probability"))?;
            if !(0.0..=1.0).contains(&p) {
                bail!("random: p = {p} is outside [0, 1]");
            }
            let seed: u64 = seed.parse().map_err(|_| anyhow!("random: bad seed '{seed}'"))?;
            ClassicalGraph::random(positive(n, "random n")?, p, seed)
        }
        [single] if single.len() > 1 && single.is_char_boundary(1) => {
            let (head, tail) = single.split_at(1);
            let Ok(n) = tail.parse::<usize>() else { return Ok(None) };
            if n == 0 {
                bail!("{spec}: graphs need at least one vertex");
            }
            match head {
                "K" => ClassicalGraph::complete(n),
                "C" => ClassicalGraph::cycle(n),
                "P" => ClassicalGraph::path(n),
                "E" => ClassicalGraph::empty(n),
                _ => return Ok(None),
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(g))
}

fn builtin_quantum(spec: &str) -> Result<Option<QuantumGraph>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let algebra = match parts.as_slice() {
        ["complete-full", n] => BlockAlgebra::full(positive(n, "n")?),
        ["complete-amp", d, k] => BlockAlgebra::amplified(positive(d, "d")?, positive(k, "k")?),
        ["complete-diag", n] => BlockAlgebra::diagonal(positive(n, "n")?),
        _ => return Ok(None),
    };
    Ok(Some(QuantumGraph::complete(algebra)?))
}

/// Loads a document file; a file that is not JSON is parsed as DIMACS.
fn load_document(path: &str, tol: f64) -> Result<Document> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        Ok(from_json(&text, tol).with_context(|| format!("parsing {path}"))?)
    } else {
        let g = ClassicalGraph::from_dimacs(&text).with_context(|| format!("parsing {path}"))?;
        Ok(Document::ClassicalGraph(g))
    }
}

pub fn classical_graph(spec: &str) -> Result<ClassicalGraph> {
    if let Some(g) = builtin_classical(spec)? {
        return Ok(g);
    }
    if Path::new(spec).is_file() {
        return match load_document(spec, f64::INFINITY)? {
            Document::ClassicalGraph(g) => Ok(g),
            other => bail!("{spec} holds a {} document, expected a classical graph", other.kind()),
        };
    }
    bail!("'{spec}' is neither a file nor a classical builtin\n{SPEC_HELP}")
}

/// A quantum graph; classical inputs are embedded over the diagonal algebra.
pub fn quantum_graph(spec: &str, tol: f64) -> Result<QuantumGraph> {
    if let Some(g) = builtin_quantum(spec)? {
        return Ok(g);
    }
    if let Some(g) = builtin_classical(spec)? {
        return Ok(QuantumGraph::from_classical(&g));
    }
    if Path::new(spec).is_file() {
        return match load_document(spec, tol)? {
            Document::QuantumGraph(g) => Ok(g),
            Document::ClassicalGraph(g) => Ok(QuantumGraph::from_classical(&g)),
            other => bail!("{spec} holds a {} document, expected a graph", other.kind()),
        };
    }
    bail!("'{spec}' is neither a file nor a builtin graph\n{SPEC_HELP}")
}

/// The classical graph behind `spec`, if it names one.
pub fn as_classical(spec: &str) -> Result<Option<ClassicalGraph>> {
    if builtin_quantum(spec)?.is_some() {
        return Ok(None);
    }
    if let Some(g) = builtin_classical(spec)? {
        return Ok(Some(g));
    }
    if Path::new(spec).is_file() {
        if let Document::ClassicalGraph(g) = load_document(spec, f64::INFINITY)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn certificate(path: &str) -> Result<ColoringCertificate> {
    match load_document(path, f64::INFINITY)? {
        Document::Certificate(c) => Ok(c),
        other => bail!("{path} holds a {} document, expected a certificate", other.kind()),
    }
}

pub fn homomorphism(path: &str) -> Result<HomomorphismCertificate> {
    match load_document(path, f64::INFINITY)? {
        Document::Homomorphism(h) => Ok(h),
        other => bail!("{path} holds a {} document, expected a homomorphism", other.kind()),
    }
}
