//! Named graphs, families and integer ranges on the command line.
//!
//! Graphs: `K5`, `C7`, `P4`, `S6` (star on 6 vertices), `M3` (3 disjoint
//! edges), `W5` (hub joined to `C5`), `I4` (4 isolated vertices), `T(7,3)`,
//! `K(2,3)` and `g6:<graph6>`. An underscore after the letter is allowed,
//! so `K_5` reads as `K5`. Families are comma-separated lists of graphs and
//! `fp(<graph>,<p>)` covering families.

use anyhow::{anyhow, bail, ensure, Context, Result};
use turan_core::covering::family_fp;
use turan_core::{Graph, GraphFamily};

/// Splits on commas that are not inside parentheses.
pub fn split_top_level(text: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| anyhow!("unbalanced ')' in {text:?}"))?
            }
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    ensure!(depth == 0, "unbalanced '(' in {text:?}");
    parts.push(text[start..].trim());
    ensure!(parts.iter().all(|p| !p.is_empty()), "empty item in {text:?}");
    Ok(parts)
}

/// `name(a,b)` with the inner text split at top-level commas.
fn call<'a>(text: &'a str, name: &str) -> Result<Option<Vec<&'a str>>> {
    let Some(rest) = text.strip_prefix(name).and_then(|r| r.strip_prefix('(')) else {
        return Ok(None);
    };
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| anyhow!("missing ')' in {text:?}"))?;
    Ok(Some(split_top_level(inner)?))
}

fn number(text: &str) -> Result<usize> {
    text.trim()
        .parse()
        .with_context(|| format!("expected a non-negative integer, got {text:?}"))
}

fn two_numbers(args: &[&str], text: &str) -> Result<(usize, usize)> {
    ensure!(args.len() == 2, "{text:?} takes two arguments");
    Ok((number(args[0])?, number(args[1])?))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let text = text.trim();
    if let Some(code) = text.strip_prefix("g6:") {
        return Ok(Graph::from_graph6(code)?);
    }
    if text.starts_with("fp(") {
        bail!("{text:?} is a family, not a single graph");
    }
    if let Some(args) = call(text, "T")? {
        let (n, k) = two_numbers(&args, text)?;
        return Ok(Graph::turan(n, k)?);
    }
    if let Some(args) = call(text, "K")? {
        let (a, b) = two_numbers(&args, text)?;
        return Ok(Graph::complete_bipartite(a, b)?);
    }
    let mut chars = text.chars();
    let letter = chars.next().ok_or_else(|| anyhow!("empty graph name"))?;
    let rest = chars.as_str();
    let n = number(rest.strip_prefix('_').unwrap_or(rest)).with_context(|| format!("unknown graph {text:?}"))?;
    let g = match letter {
        'K' => Graph::complete(n)?,
        'C' => Graph::cycle(n)?,
        'P' => Graph::path(n)?,
        'S' => Graph::star(n)?,
        'M' => Graph::matching(n)?,
        'W' => Graph::wheel(n)?,
        'I' => Graph::empty(n)?,
        _ => bail!("unknown graph {text:?}"),
    };
    Ok(g)
}

/// A comma-separated family; the label is the text as given.
pub fn parse_family(text: &str) -> Result<GraphFamily> {
    let mut fam = GraphFamily::new(text.trim());
    for item in split_top_level(text)? {
        if let Some(args) = call(item, "fp")? {
            ensure!(args.len() == 2, "{item:?} takes a graph and a size");
            let f = parse_graph(args[0])?;
            for g in family_fp(&f, number(args[1])?)?.members() {
                fam.insert(*g);
            }
        } else {
            fam.insert(parse_graph(item)?);
        }
    }
    Ok(fam)
}

/// Joins several family arguments into one family.
pub fn parse_families<S: AsRef<str>>(items: &[S]) -> Result<GraphFamily> {
    let mut fam = GraphFamily::new(items.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(","));
    for item in items {
        for g in parse_family(item.as_ref())?.members() {
            fam.insert(*g);
        }
    }
    Ok(fam)
}

/// `a..b` and `a..=b` (both inclusive), a single value, or a comma list.
pub fn parse_range(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    let values = if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (number(lo)?, number(hi)?);
        ensure!(lo <= hi, "empty range {text:?}");
        (lo..=hi).collect()
    } else {
        text.split(',').map(number).collect::<Result<Vec<_>>>()?
    };
    ensure!(!values.is_empty(), "empty range {text:?}");
    Ok(values)
}
