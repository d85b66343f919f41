//! Line-oriented loop files.
//!
//! ```text
//! # comment
//! loop Z3
//! order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! end
//! ```
//!
//! Elements are 0-based and kept as written; the identity is detected.
//! Comments attach to the next block, or to the file trailer after the last.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::LoopFileError;
use crate::loops::FiniteLoop;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedLoop {
    pub name: String,
    pub comments: Vec<String>,
    pub table: FiniteLoop,
}

impl NamedLoop {
    pub fn new(name: impl Into<String>, table: FiniteLoop) -> Self {
        NamedLoop {
            name: name.into(),
            comments: Vec::new(),
            table,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopFile {
    pub loops: Vec<NamedLoop>,
    pub trailing: Vec<String>,
}

impl LoopFile {
    pub fn get(&self, name: &str) -> Option<&NamedLoop> {
        self.loops.iter().find(|l| l.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.loops.iter().map(|l| l.name.as_str()).collect()
    }

    /// `(name, loop)` pairs in file order.
    pub fn into_pairs(self) -> Vec<(String, FiniteLoop)> {
        self.loops.into_iter().map(|l| (l.name, l.table)).collect()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> LoopFileError {
    LoopFileError::Syntax {
        line,
        message: message.into(),
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.starts_with('#') && !name.chars().any(char::is_whitespace)
}

struct Block {
    name: String,
    line: usize,
    order: Option<usize>,
    rows: Vec<Vec<usize>>,
}

pub fn parse_loop_file(text: &str) -> Result<LoopFile, LoopFileError> {
    let mut file = LoopFile::default();
    let mut seen = HashSet::new();
    let mut comments = Vec::new();
    let mut block: Option<Block> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        let mut words = trimmed.split_whitespace();
        let head = words.next().unwrap_or_default();

        let Some(b) = block.as_mut() else {
            if head != "loop" {
                return Err(syntax(line, format!("expected `loop <name>`, found {head:?}")));
            }
            let name = words.next().ok_or_else(|| syntax(line, "missing loop name"))?;
            if words.next().is_some() || !valid_name(name) {
                return Err(syntax(line, "loop name must be a single word"));
            }
            if !seen.insert(name.to_string()) {
                return Err(LoopFileError::Duplicate {
                    name: name.to_string(),
                    line,
                });
            }
            block = Some(Block {
                name: name.to_string(),
                line,
                order: None,
                rows: Vec::new(),
            });
            continue;
        };

        match (head, b.order) {
            ("order", None) => {
                let n = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| syntax(line, "`order` needs a positive integer"))?;
                if words.next().is_some() {
                    return Err(syntax(line, "trailing text after order"));
                }
                b.order = Some(n);
            }
            (_, None) => return Err(syntax(line, format!("expected `order <n>` after `loop {}`", b.name))),
            ("end", Some(n)) => {
                if b.rows.len() != n {
                    return Err(syntax(line, format!("loop {} has {} rows, expected {n}", b.name, b.rows.len())));
                }
                let b = block.take().expect("open block");
                let table = FiniteLoop::validate(&b.rows, None).map_err(|source| LoopFileError::Invalid {
                    name: b.name.clone(),
                    line: b.line,
                    source,
                })?;
                file.loops.push(NamedLoop {
                    name: b.name,
                    comments: std::mem::take(&mut comments),
                    table,
                });
            }
            (_, Some(n)) => {
                if b.rows.len() == n {
                    return Err(syntax(line, format!("expected `end` after {n} rows")));
                }
                let mut row = Vec::with_capacity(n);
                let mut col = raw.len() - raw.trim_start().len() + 1;
                for word in raw.split_inclusive(char::is_whitespace) {
                    let tok = word.trim();
                    if !tok.is_empty() {
                        let v = tok
                            .parse::<usize>()
                            .map_err(|_| syntax(line, format!("column {col}: {tok:?} is not a non-negative integer")))?;
                        row.push(v);
                    }
                    col += word.len();
                }
                if row.len() != n {
                    return Err(syntax(line, format!("row has {} entries, expected {n}", row.len())));
                }
                b.rows.push(row);
            }
        }
    }
    if let Some(b) = block {
        return Err(syntax(b.line, format!("loop {} is missing `end`", b.name)));
    }
    file.trailing = comments;
    Ok(file)
}

pub fn read_loop_file(path: &Path) -> Result<LoopFile, ReadError> {
    let text = std::fs::read_to_string(path).map_err(|e| ReadError::Io(path.display().to_string(), e))?;
    parse_loop_file(&text).map_err(|e| ReadError::Parse(path.display().to_string(), e))
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{0}: {1}")]
    Parse(String, #[source] LoopFileError),
}

fn write_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
}

pub fn write_loop(out: &mut String, l: &NamedLoop) {
    write_comments(out, &l.comments);
    let n = l.table.order();
    let width = (n - 1).to_string().len();
    let _ = writeln!(out, "loop {}\norder {n}", l.name);
    for row in l.table.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out.push_str("end\n");
}

pub fn print_loop_file(f: &LoopFile) -> String {
    let mut out = String::new();
    for (i, l) in f.loops.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_loop(&mut out, l);
    }
    write_comments(&mut out, &f.trailing);
    out
}

/// Reads every `*.loop` file in `dir` (sorted by file name), concatenating
/// their loops. Names must be unique across the directory.
pub fn read_corpus_dir(dir: &Path) -> Result<Vec<(String, FiniteLoop)>, ReadError> {
    let entries = std::fs::read_dir(dir).map_err(|e| ReadError::Io(dir.display().to_string(), e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| ReadError::Io(dir.display().to_string(), e))?.path();
        if path.extension().is_some_and(|x| x == "loop") {
            paths.push(path);
        }
    }
    paths.sort();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for path in paths {
        for l in read_loop_file(&path)?.loops {
            if !seen.insert(l.name.clone()) {
                return Err(ReadError::Parse(
                    path.display().to_string(),
                    LoopFileError::Duplicate { name: l.name, line: 0 },
                ));
            }
            out.push((l.name, l.table));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::error::LoopError;
    use crate::loops::tests::{l5, z};
    use proptest::prelude::*;

    const Z4: &str = "loop Z4\norder 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\nend\n";

    #[test]
    fn parses_one_block() {
        let f = parse_loop_file(Z4).unwrap();
        assert_eq!(f.names(), ["Z4"]);
        assert_eq!(f.loops[0].table, z(4));
    }

    #[test]
    fn parses_l5_with_comments() {
        let text = "# from the worked example\nloop L5\norder 5\n0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3\nend\n# done\n";
        let f = parse_loop_file(text).unwrap();
        assert_eq!(f.loops[0].table, l5());
        assert_eq!(f.loops[0].comments, ["from the worked example"]);
        assert_eq!(f.trailing, ["done"]);
    }

    #[test]
    fn identity_is_detected_not_forced() {
        let text = "loop shifted\norder 3\n2 0 1\n0 1 2\n1 2 0\nend\n";
        let f = parse_loop_file(text).unwrap();
        assert_eq!(f.loops[0].table.identity(), 1);
    }

    #[test]
    fn errors_carry_lines() {
        let dup = format!("{Z4}{Z4}");
        assert!(matches!(
            parse_loop_file(&dup),
            Err(LoopFileError::Duplicate { line: 8, .. })
        ));
        let bad = "loop A\norder 2\n0 1\n1 x\nend\n";
        match parse_loop_file(bad) {
            Err(LoopFileError::Syntax { line: 4, message }) => assert!(message.contains("column 3"), "{message}"),
            other => panic!("{other:?}"),
        }
        let short = "loop A\norder 2\n0 1\nend\n";
        assert!(matches!(parse_loop_file(short), Err(LoopFileError::Syntax { line: 4, .. })));
        let open = "loop A\norder 1\n0\n";
        assert!(matches!(parse_loop_file(open), Err(LoopFileError::Syntax { line: 1, .. })));
        assert!(matches!(parse_loop_file("order 2\n"), Err(LoopFileError::Syntax { line: 1, .. })));
        let not_latin = "loop B\norder 2\n0 1\n1 1\nend\n";
        match parse_loop_file(not_latin) {
            Err(LoopFileError::Invalid { name, line: 1, source: LoopError::NotLatin { .. } }) => assert_eq!(name, "B"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn group_corpus_round_trips() {
        let f = LoopFile {
            loops: corpus::groups().into_iter().map(|(n, g)| NamedLoop::new(n, g)).collect(),
            trailing: vec![],
        };
        assert_eq!(parse_loop_file(&print_loop_file(&f)).unwrap(), f);
    }

    proptest! {
        #[test]
        fn round_trip(idx in 0usize..42, u in 0usize..16, v in 0usize..16, comment in "[a-z ]{0,12}") {
            let (name, g) = corpus::groups().swap_remove(idx);
            let n = g.order();
            let iso = crate::isotopy::principal_isotope(&g, crate::isotopy::IsotopeSpec::Full { u: u % n, v: v % n });
            let mut l = NamedLoop::new(name, iso);
            l.comments.push(comment.trim_end().to_string());
            let f = LoopFile { loops: vec![l], trailing: vec!["tail".into()] };
            prop_assert_eq!(parse_loop_file(&print_loop_file(&f)).unwrap(), f);
        }
    }
}
