//! Problem-file parsing, canonical export, and result serialization.
//!
//! The problem format is line-oriented text with explicit section
//! headers, in fixed order: `semiring:`, `variables:`, one `factor:`
//! block per factor, then optional `tree:` and `query:` sections.
//! Factor values are row-major with the last listed scope variable
//! fastest, and scopes are listed in declaration order, so a file
//! fixes its tables bit-exactly. [`export_problem`] emits the
//! canonical form; parsing it back is byte-stable.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::join_tree::JoinTree;
use crate::semiring::{Semiring, TableData};
use crate::solutions::{SolveOutput, SolveReport};
use crate::tuples::{Scope, VarId, VariableTable};
use crate::valuation::Valuation;

#[derive(Debug)]
pub enum IoError {
    Read { path: String, detail: String },
    Parse { line: usize, detail: String },
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Read { path, detail } => write!(f, "cannot read {path}: {detail}"),
            IoError::Parse { line, detail } => write!(f, "line {line}: {detail}"),
        }
    }
}

impl std::error::Error for IoError {}

fn err(line: usize, detail: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        detail: detail.into(),
    }
}

/// A parsed and validated problem.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub semiring: Semiring,
    pub vars: Arc<VariableTable>,
    pub factors: Vec<Valuation>,
    pub tree: Option<JoinTree>,
    pub query: Option<Scope>,
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Content lines with their 1-based line numbers; blanks and `#`
/// comments are dropped up front.
struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |(n, _)| *n)
    }
}

fn is_section_header(line: &str) -> bool {
    ["variables:", "factor:", "tree:", "query:"]
        .iter()
        .any(|h| line.starts_with(h))
}

pub fn parse_problem(path: impl AsRef<Path>) -> Result<ProblemFile, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    parse_inner(&text, path.parent())
}

/// Parses problem text directly; a `semiring: file` link is rejected
/// because there is no base directory to resolve it against.
pub fn parse_problem_str(text: &str) -> Result<ProblemFile, IoError> {
    parse_inner(text, None)
}

fn parse_inner(text: &str, base: Option<&Path>) -> Result<ProblemFile, IoError> {
    let mut cur = Lines::new(text);

    let (ln, line) = cur.next().ok_or_else(|| err(1, "empty problem file"))?;
    let selector = line
        .strip_prefix("semiring:")
        .ok_or_else(|| err(ln, "expected a `semiring:` line first"))?
        .trim();
    let semiring = parse_semiring_selector(selector, ln, &mut cur, base)?;

    let (ln, line) = cur
        .next()
        .ok_or_else(|| err(cur.last_line(), "missing `variables:`"))?;
    if line != "variables:" {
        return Err(err(ln, format!("expected `variables:`, found {line:?}")));
    }
    let mut table = VariableTable::new();
    while let Some((ln, line)) = cur.peek() {
        if is_section_header(line) {
            break;
        }
        cur.next();
        let mut parts = line.split_whitespace();
        let name = parts
            .next()
            .ok_or_else(|| err(ln, "expected `name cardinality`"))?;
        let card: usize = parts
            .next()
            .ok_or_else(|| err(ln, format!("variable {name} is missing a cardinality")))?
            .parse()
            .map_err(|_| err(ln, format!("bad cardinality for variable {name}")))?;
        if parts.next().is_some() {
            return Err(err(ln, "expected exactly `name cardinality`"));
        }
        if table.lookup(name).is_some() {
            return Err(err(ln, format!("variable {name} declared twice")));
        }
        table
            .add_var(name, card)
            .map_err(|e| err(ln, e.to_string()))?;
    }
    let vars = Arc::new(table);

    let mut factors = Vec::new();
    let mut tree = None;
    let mut query = None;
    let mut tree_line = 0;
    while let Some((ln, line)) = cur.next() {
        if let Some(rest) = line.strip_prefix("factor:") {
            if tree.is_some() || query.is_some() {
                return Err(err(ln, "factor sections must precede tree and query"));
            }
            factors.push(parse_factor(rest, ln, &mut cur, &vars, &semiring)?);
        } else if line == "tree:" {
            if tree.is_some() || query.is_some() {
                return Err(err(ln, "duplicate or misplaced tree section"));
            }
            tree_line = ln;
            tree = Some(parse_tree(ln, &mut cur, &vars, factors.len())?);
        } else if let Some(rest) = line.strip_prefix("query:") {
            if query.is_some() {
                return Err(err(ln, "duplicate query section"));
            }
            query = Some(parse_scope_names(rest.trim(), ln, &vars)?);
        } else {
            return Err(err(ln, format!("unexpected line {line:?}")));
        }
    }

    if let Some(tree) = &tree {
        tree.check_running_intersection()
            .map_err(|e| err(tree_line, e.to_string()))?;
        let scopes: Vec<Scope> = factors.iter().map(|f| f.label().clone()).collect();
        tree.check_covering(&scopes)
            .map_err(|e| err(tree_line, e.to_string()))?;
    }

    Ok(ProblemFile {
        semiring,
        vars,
        factors,
        tree,
        query,
    })
}

fn parse_semiring_selector(
    selector: &str,
    ln: usize,
    cur: &mut Lines<'_>,
    base: Option<&Path>,
) -> Result<Semiring, IoError> {
    if selector == "table" {
        let data = parse_table_block(cur)?;
        return Semiring::table(data).map_err(|e| err(ln, e.to_string()));
    }
    if let Some(path) = selector.strip_prefix("file ") {
        let Some(base) = base else {
            return Err(err(
                ln,
                "a linked semiring file requires parsing from a path",
            ));
        };
        let full = base.join(path.trim());
        let text = fs::read_to_string(&full).map_err(|e| IoError::Read {
            path: full.display().to_string(),
            detail: e.to_string(),
        })?;
        return parse_semiring_table_str(&text);
    }
    if selector.is_empty() {
        return Err(err(ln, "missing semiring name"));
    }
    Semiring::from_name(selector).map_err(|e| err(ln, e.to_string()))
}

/// Parses a finite semiring table file: `elements:`, `zero:`, `one:`,
/// then an `add:` and a `mul:` block of one row per element.
pub fn parse_semiring_table_str(text: &str) -> Result<Semiring, IoError> {
    let mut cur = Lines::new(text);
    let data = parse_table_block(&mut cur)?;
    if let Some((ln, line)) = cur.next() {
        return Err(err(ln, format!("unexpected line {line:?} after the table")));
    }
    Semiring::table(data).map_err(|e| err(1, e.to_string()))
}

fn parse_table_block(cur: &mut Lines<'_>) -> Result<TableData, IoError> {
    let take = |cur: &mut Lines<'_>, key: &str| -> Result<(usize, String), IoError> {
        let (ln, line) = cur
            .next()
            .ok_or_else(|| err(cur.last_line(), format!("missing `{key}`")))?;
        let rest = line
            .strip_prefix(key)
            .ok_or_else(|| err(ln, format!("expected `{key}`, found {line:?}")))?;
        Ok((ln, rest.trim().to_string()))
    };

    let (ln, elements_line) = take(cur, "elements:")?;
    let elements: Vec<String> = elements_line.split_whitespace().map(String::from).collect();
    if elements.is_empty() {
        return Err(err(ln, "a table semiring needs at least one element"));
    }
    let index_of = |name: &str, ln: usize| -> Result<u32, IoError> {
        elements
            .iter()
            .position(|e| e == name)
            .map(|i| i as u32)
            .ok_or_else(|| err(ln, format!("unknown semiring element {name:?}")))
    };

    let (ln_zero, zero_name) = take(cur, "zero:")?;
    let zero = index_of(&zero_name, ln_zero)?;
    let (ln_one, one_name) = take(cur, "one:")?;
    let one = index_of(&one_name, ln_one)?;

    let mut rows = |key: &str| -> Result<Vec<u32>, IoError> {
        let (_, rest) = take(cur, key)?;
        if !rest.is_empty() {
            return Err(err(
                cur.last_line(),
                format!("`{key}` takes no inline values"),
            ));
        }
        let mut out = Vec::with_capacity(elements.len() * elements.len());
        for _ in 0..elements.len() {
            let (ln, line) = cur
                .next()
                .ok_or_else(|| err(cur.last_line(), format!("missing a `{key}` table row")))?;
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != elements.len() {
                return Err(err(
                    ln,
                    format!(
                        "expected {} entries in the row, found {}",
                        elements.len(),
                        row.len()
                    ),
                ));
            }
            for name in row {
                out.push(index_of(name, ln)?);
            }
        }
        Ok(out)
    };
    let add = rows("add:")?;
    let mul = rows("mul:")?;

    Ok(TableData {
        name: None,
        elements,
        zero,
        one,
        add,
        mul,
    })
}

fn parse_scope_names(rest: &str, ln: usize, vars: &VariableTable) -> Result<Scope, IoError> {
    if rest == "-" {
        return Ok(Scope::empty());
    }
    let mut ids: Vec<VarId> = Vec::new();
    for name in rest.split_whitespace() {
        let id = vars
            .lookup(name)
            .ok_or_else(|| err(ln, format!("unknown variable {name:?}")))?;
        if ids.last().is_some_and(|&prev| prev >= id) {
            return Err(err(
                ln,
                format!("scope must list distinct variables in declaration order, got {name:?}"),
            ));
        }
        ids.push(id);
    }
    Ok(Scope::new(ids))
}

fn parse_factor(
    rest: &str,
    ln: usize,
    cur: &mut Lines<'_>,
    vars: &Arc<VariableTable>,
    semiring: &Semiring,
) -> Result<Valuation, IoError> {
    let scope = parse_scope_names(rest.trim(), ln, vars)?;
    let expected = vars
        .frame_size(&scope)
        .map_err(|e| err(ln, e.to_string()))?;
    let scope_text = vars.format_scope(&scope);
    let mut values = Vec::with_capacity(expected);
    while values.len() < expected {
        let Some((vln, line)) = cur.peek() else {
            return Err(err(
                cur.last_line(),
                format!(
                    "expected {expected} values for factor over {scope_text}, found {}",
                    values.len()
                ),
            ));
        };
        if is_section_header(line) {
            return Err(err(
                vln,
                format!(
                    "expected {expected} values for factor over {scope_text}, found {}",
                    values.len()
                ),
            ));
        }
        cur.next();
        for token in line.split_whitespace() {
            if values.len() == expected {
                return Err(err(
                    vln,
                    format!("expected {expected} values for factor over {scope_text}, found more"),
                ));
            }
            values.push(
                semiring
                    .parse_value(token)
                    .map_err(|e| err(vln, e.to_string()))?,
            );
        }
    }
    Valuation::new(vars.clone(), semiring.clone(), scope, values)
        .map_err(|e| err(ln, e.to_string()))
}

fn parse_tree(
    header_line: usize,
    cur: &mut Lines<'_>,
    vars: &VariableTable,
    factor_count: usize,
) -> Result<JoinTree, IoError> {
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut labels: Vec<Scope> = Vec::new();
    let mut assignment: Vec<Option<usize>> = vec![None; factor_count];

    while let Some((ln, line)) = cur.peek() {
        if !line.starts_with("node:") {
            break;
        }
        cur.next();
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let node = parents.len();
        let expect = |idx: usize, what: &str| -> Result<&str, IoError> {
            tokens
                .get(idx)
                .copied()
                .ok_or_else(|| err(ln, format!("node line is missing {what}")))
        };
        let id: usize = expect(1, "an id")?
            .parse()
            .map_err(|_| err(ln, "bad node id"))?;
        if id != node {
            return Err(err(ln, format!("expected node {node}, found {id}")));
        }
        if expect(2, "`parent:`")? != "parent:" {
            return Err(err(ln, "expected `parent:`"));
        }
        let parent_tok = expect(3, "a parent")?;
        let parent = if parent_tok == "-" {
            None
        } else {
            Some(
                parent_tok
                    .parse::<usize>()
                    .map_err(|_| err(ln, "bad parent id"))?,
            )
        };
        if expect(4, "`label:`")? != "label:" {
            return Err(err(ln, "expected `label:`"));
        }
        let mut idx = 5;
        let mut label_names = Vec::new();
        while idx < tokens.len() && tokens[idx] != "factors:" {
            label_names.push(tokens[idx]);
            idx += 1;
        }
        if idx == tokens.len() {
            return Err(err(ln, "node line is missing `factors:`"));
        }
        let label_text = if label_names == ["-"] {
            String::from("-")
        } else {
            label_names.join(" ")
        };
        let label = parse_scope_names(&label_text, ln, vars)?;
        idx += 1;
        let mut node_factors = Vec::new();
        while idx < tokens.len() {
            if tokens[idx] != "-" {
                node_factors.push(
                    tokens[idx]
                        .parse::<usize>()
                        .map_err(|_| err(ln, format!("bad factor index {:?}", tokens[idx])))?,
                );
            }
            idx += 1;
        }
        for f in node_factors {
            if f >= factor_count {
                return Err(err(ln, format!("factor index {f} out of range")));
            }
            if assignment[f].is_some() {
                return Err(err(ln, format!("factor {f} assigned twice")));
            }
            assignment[f] = Some(node);
        }
        parents.push(parent);
        labels.push(label);
    }

    if parents.is_empty() {
        return Err(err(header_line, "tree section has no nodes"));
    }
    let mut flat = Vec::with_capacity(factor_count);
    for (f, node) in assignment.into_iter().enumerate() {
        flat.push(node.ok_or_else(|| {
            err(
                header_line,
                format!("factor {f} is not assigned to a tree node"),
            )
        })?);
    }
    JoinTree::new(parents, labels, flat).map_err(|e| err(header_line, e.to_string()))
}

// ---------------------------------------------------------------------------
// Canonical export
// ---------------------------------------------------------------------------

/// The built-in name to export, when re-parsing it reproduces this
/// exact semiring.
fn builtin_name(s: &Semiring) -> Option<String> {
    let name = s.name();
    let rebuilt = Semiring::from_name(&name).ok()?;
    match (s.table_data(), rebuilt.table_data()) {
        (Some(a), Some(b)) if a == b => Some(name),
        (None, None) => Some(name),
        _ => None,
    }
}

fn export_table_block(out: &mut String, data: &TableData) {
    let n = data.elements.len();
    out.push_str(&format!("elements: {}\n", data.elements.join(" ")));
    out.push_str(&format!("zero: {}\n", data.elements[data.zero as usize]));
    out.push_str(&format!("one: {}\n", data.elements[data.one as usize]));
    for (key, table) in [("add:", &data.add), ("mul:", &data.mul)] {
        out.push_str(key);
        out.push('\n');
        for row in table.chunks(n) {
            let names: Vec<&str> = row
                .iter()
                .map(|&e| data.elements[e as usize].as_str())
                .collect();
            out.push_str(&names.join(" "));
            out.push('\n');
        }
    }
}

/// Serializes a problem in canonical form: parsing the result yields an
/// identical problem, and exporting that parse is byte-identical.
pub fn export_problem(p: &ProblemFile) -> String {
    let mut out = String::new();
    match builtin_name(&p.semiring) {
        Some(name) => out.push_str(&format!("semiring: {name}\n")),
        None => {
            out.push_str("semiring: table\n");
            export_table_block(
                &mut out,
                p.semiring.table_data().expect("non-builtin is a table"),
            );
        }
    }

    out.push_str("\nvariables:\n");
    for v in 0..p.vars.len() {
        out.push_str(&format!("{} {}\n", p.vars.name(v), p.vars.card(v)));
    }

    for f in p.factors.iter() {
        let scope = f.label();
        if scope.is_empty() {
            out.push_str("\nfactor:\n");
        } else {
            out.push_str(&format!("\nfactor: {}\n", p.vars.format_scope(scope)));
        }
        let row_len = scope.iter().last().map_or(1, |v| p.vars.card(v));
        for row in f.table().chunks(row_len) {
            let cells: Vec<String> = row.iter().map(|v| p.semiring.format_value(v)).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }

    if let Some(tree) = &p.tree {
        out.push_str("\ntree:\n");
        for i in 0..tree.len() {
            let parent = match tree.parent(i) {
                Some(p) => p.to_string(),
                None => "-".into(),
            };
            let label = tree.label(i);
            let label_text = if label.is_empty() {
                "-".into()
            } else {
                p.vars.format_scope(label)
            };
            let mine: Vec<String> = tree
                .assignment()
                .iter()
                .enumerate()
                .filter(|&(_, &node)| node == i)
                .map(|(f, _)| f.to_string())
                .collect();
            let factors_text = if mine.is_empty() {
                "-".into()
            } else {
                mine.join(" ")
            };
            out.push_str(&format!(
                "node: {i} parent: {parent} label: {label_text} factors: {factors_text}\n"
            ));
        }
    }

    if let Some(query) = &p.query {
        if query.is_empty() {
            out.push_str("\nquery: -\n");
        } else {
            out.push_str(&format!("\nquery: {}\n", p.vars.format_scope(query)));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

/// One reported configuration: variable name and value pairs in scope
/// order, already formatted for the semiring at hand.
pub type Assignment = Vec<(String, String)>;

/// A solve result flattened for serialization. Key order is fixed; the
/// `timing` field is always `-` in the document so identical runs are
/// byte-identical (wall-clock timing goes to diagnostics instead).
#[derive(Debug, Clone)]
pub struct ResultDocument {
    pub task: String,
    pub algorithm: Option<String>,
    pub soundness: Option<String>,
    pub optimum: Option<String>,
    pub solutions: Option<Vec<Assignment>>,
    pub projection: Option<Vec<(Assignment, String)>>,
    pub truncated: Option<bool>,
    pub verification: Option<String>,
    pub oracle: Option<String>,
    pub report: Option<String>,
}

fn tuple_pairs(vars: &VariableTable, t: &crate::tuples::Tuple) -> Vec<(String, String)> {
    t.scope()
        .iter()
        .zip(t.values())
        .map(|(v, &x)| (vars.name(v).to_string(), x.to_string()))
        .collect()
}

/// Flattens a [`SolveReport`] into a document.
pub fn result_document(
    vars: &VariableTable,
    semiring: &Semiring,
    report: &SolveReport,
) -> ResultDocument {
    let mut doc = ResultDocument {
        task: report.task.as_str().to_string(),
        algorithm: report.algorithm.map(|a| a.short().to_string()),
        soundness: report.annotation.clone(),
        optimum: report.optimum.as_ref().map(|v| semiring.format_value(v)),
        solutions: None,
        projection: None,
        truncated: None,
        verification: report
            .verification
            .map(|v| format!("checked {}, dropped {}", v.checked, v.dropped)),
        oracle: None,
        report: None,
    };
    match &report.output {
        SolveOutput::Projection(val) => {
            let mut rows = Vec::new();
            for t in vars.enumerate(val.label()).expect("projection frame fits") {
                let value = semiring.format_value(val.value_at(&t).expect("tuple in frame"));
                rows.push((tuple_pairs(vars, &t), value));
            }
            doc.projection = Some(rows);
        }
        SolveOutput::Single(t) => {
            doc.solutions = Some(vec![tuple_pairs(vars, t)]);
        }
        SolveOutput::Set(set) => {
            doc.solutions = Some(set.tuples().iter().map(|t| tuple_pairs(vars, t)).collect());
            doc.truncated = Some(set.truncated());
        }
    }
    doc
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_object(pairs: &[(String, String)], extra: Option<(&str, &str)>) -> String {
    let mut fields: Vec<String> = pairs
        .iter()
        .map(|(k, v)| format!("\"{}\": \"{}\"", json_escape(k), json_escape(v)))
        .collect();
    if let Some((k, v)) = extra {
        fields.push(format!("\"{}\": \"{}\"", json_escape(k), json_escape(v)));
    }
    format!("{{{}}}", fields.join(", "))
}

impl ResultDocument {
    /// Renders the document as JSON with a stable key order. Absent
    /// fields are omitted; present fields always appear in the same
    /// order, so identical results serialize identically.
    pub fn to_json(&self) -> String {
        let mut fields: Vec<String> = Vec::new();
        let scalar = |k: &str, v: &str| format!("  \"{}\": \"{}\"", json_escape(k), json_escape(v));
        fields.push(scalar("task", &self.task));
        if let Some(a) = &self.algorithm {
            fields.push(scalar("algorithm", a));
        }
        if let Some(s) = &self.soundness {
            fields.push(scalar("soundness", s));
        }
        if let Some(m) = &self.optimum {
            fields.push(scalar("optimum", m));
        }
        if let Some(solutions) = &self.solutions {
            let rows: Vec<String> = solutions
                .iter()
                .map(|t| format!("    {}", json_object(t, None)))
                .collect();
            fields.push(format!("  \"solutions\": [\n{}\n  ]", rows.join(",\n")));
        }
        if let Some(projection) = &self.projection {
            let rows: Vec<String> = projection
                .iter()
                .map(|(t, value)| format!("    {}", json_object(t, Some(("value", value)))))
                .collect();
            fields.push(format!("  \"projection\": [\n{}\n  ]", rows.join(",\n")));
        }
        if let Some(truncated) = self.truncated {
            fields.push(format!("  \"truncated\": {truncated}"));
        }
        if let Some(v) = &self.verification {
            fields.push(scalar("verification", v));
        }
        if let Some(o) = &self.oracle {
            fields.push(scalar("oracle", o));
        }
        if let Some(r) = &self.report {
            fields.push(scalar("report", r));
        }
        fields.push(scalar("timing", "-"));
        format!("{{\n{}\n}}\n", fields.join(",\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::join_tree::{build_join_tree, Heuristic};
    use crate::semiring::Value;
    use crate::solutions::{solve, SolveOptions, Task};

    fn problem_from_fixture(fixture: &fixtures::Fixture, with_tree: bool) -> ProblemFile {
        let scopes: Vec<Scope> = fixture.factors.iter().map(|f| f.label().clone()).collect();
        let tree = with_tree.then(|| build_join_tree(&scopes, Heuristic::MinFill, None).unwrap());
        ProblemFile {
            semiring: fixture.semiring().clone(),
            vars: fixture.vars.clone(),
            factors: fixture.factors.clone(),
            tree,
            query: Some(Scope::singleton(0)),
        }
    }

    #[test]
    fn export_then_parse_is_identity_on_the_saturating_fixture() {
        let problem = problem_from_fixture(&fixtures::counterexample_3(), true);
        let text = export_problem(&problem);
        let parsed = parse_problem_str(&text).unwrap();

        assert_eq!(parsed.vars.as_ref(), problem.vars.as_ref());
        assert_eq!(parsed.factors.len(), problem.factors.len());
        for (a, b) in parsed.factors.iter().zip(&problem.factors) {
            assert_eq!(a.label(), b.label());
            assert!(a.tables_eq(b));
        }
        let (pt, qt) = (
            parsed.tree.as_ref().unwrap(),
            problem.tree.as_ref().unwrap(),
        );
        assert_eq!(pt.labels(), qt.labels());
        assert_eq!(pt.assignment(), qt.assignment());
        assert_eq!(parsed.query, problem.query);
        assert_eq!(export_problem(&parsed), text);
    }

    #[test]
    fn inline_tables_round_trip() {
        let text = "semiring: table\n\
            elements: lo hi\n\
            zero: lo\n\
            one: hi\n\
            add:\n\
            lo hi\n\
            hi hi\n\
            mul:\n\
            lo lo\n\
            lo hi\n\
            \n\
            variables:\n\
            x 2\n\
            \n\
            factor: x\n\
            lo hi\n";
        let parsed = parse_problem_str(text).unwrap();
        let exported = export_problem(&parsed);
        let reparsed = parse_problem_str(&exported).unwrap();
        assert_eq!(export_problem(&reparsed), exported);
        assert!(parsed.factors[0].tables_eq(&reparsed.factors[0]));
    }

    #[test]
    fn wrong_value_count_is_reported_with_the_expected_total() {
        let text = "semiring: boolean\n\
            variables:\n\
            x 2\n\
            y 2\n\
            \n\
            factor: x y\n\
            1 0 1\n";
        let e = parse_problem_str(text).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("expected 4 values"), "{msg}");
    }

    #[test]
    fn neg_inf_is_rejected_outside_maxplus() {
        let text = "semiring: boolean\n\
            variables:\n\
            x 2\n\
            \n\
            factor: x\n\
            1 -inf\n";
        let e = parse_problem_str(text).unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 6, .. }), "{e}");
    }

    #[test]
    fn maxplus_accepts_neg_inf_and_formats_it_back() {
        let text = "semiring: maxplus\n\
            variables:\n\
            x 2\n\
            \n\
            factor: x\n\
            3 -inf\n";
        let parsed = parse_problem_str(text).unwrap();
        assert_eq!(parsed.factors[0].table()[1], Value::neg_inf());
        assert!(export_problem(&parsed).contains("3 -inf"));
    }

    #[test]
    fn unknown_variables_and_out_of_order_scopes_are_rejected() {
        let base = "semiring: boolean\nvariables:\nx 2\ny 2\n\n";
        let e = parse_problem_str(&format!("{base}factor: x w\n1 1 1 1\n")).unwrap_err();
        assert!(e.to_string().contains("unknown variable"), "{e}");
        let e = parse_problem_str(&format!("{base}factor: y x\n1 1 1 1\n")).unwrap_err();
        assert!(e.to_string().contains("declaration order"), "{e}");
    }

    #[test]
    fn trees_must_cover_their_factors() {
        let text = "semiring: boolean\n\
            variables:\n\
            x 2\n\
            y 2\n\
            \n\
            factor: x y\n\
            1 0 0 1\n\
            \n\
            tree:\n\
            node: 0 parent: - label: x factors: 0\n\
            node: 1 parent: 0 label: y factors: -\n";
        let e = parse_problem_str(text).unwrap_err();
        assert!(e.to_string().contains("cover"), "{e}");
    }

    #[test]
    fn trees_must_satisfy_running_intersection() {
        let text = "semiring: boolean\n\
            variables:\n\
            x 2\n\
            y 2\n\
            \n\
            factor: x\n\
            1 0\n\
            \n\
            tree:\n\
            node: 0 parent: - label: x factors: 0\n\
            node: 1 parent: 0 label: y factors: -\n\
            node: 2 parent: 1 label: x factors: -\n";
        let e = parse_problem_str(text).unwrap_err();
        assert!(e.to_string().contains("running intersection"), "{e}");
    }

    #[test]
    fn result_documents_have_a_stable_shape() {
        let fixture = fixtures::counterexample_3();
        let report = solve(&fixture.factors, Task::Complete, &SolveOptions::default()).unwrap();
        let doc = result_document(&fixture.vars, fixture.semiring(), &report);
        let json = doc.to_json();
        assert_eq!(json, doc.to_json());
        assert!(json.starts_with("{\n  \"task\": \"complete\""), "{json}");
        assert!(json.contains("\"optimum\": \"3\""), "{json}");
        assert!(json.contains("{\"x\": \"0\", \"y\": \"1\"}"), "{json}");
        assert!(json.trim_end().ends_with("\"timing\": \"-\"\n}"), "{json}");
    }

    #[test]
    fn projection_documents_list_the_marginal_rows() {
        let fixture = fixtures::counterexample_3();
        let options = SolveOptions {
            query: Some(Scope::singleton(0)),
            ..Default::default()
        };
        let report = solve(&fixture.factors, Task::Project, &options).unwrap();
        let doc = result_document(&fixture.vars, fixture.semiring(), &report);
        let json = doc.to_json();
        assert!(json.contains("\"projection\": ["), "{json}");
        assert!(json.contains("{\"x\": \"0\", \"value\": \"3\"}"), "{json}");
    }
}
