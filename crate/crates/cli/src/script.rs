//! Line-oriented script format.
//!
//! ```text
//! init 4 weighted 8
//! insert 0 1 2.5
//! insert-into 3 0 1.0 1 4
//! delete 0 1
//! path 0 3
//! ```
//!
//! Commands are separated by newlines or `;`. `#` starts a comment.

use std::fmt;

use dyngraph_core::Vertex;

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Insert { u: Vertex, v: Vertex, w: Option<f64> },
    InsertInto { v: Vertex, tails: Vec<(Vertex, Option<f64>)> },
    Delete { u: Vertex, v: Vertex },
    Path { s: Vertex, t: Vertex },
    Tree { s: Vertex },
    Scc,
    TopOrder,
    Dist { s: Vertex, t: Vertex },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Insert { .. } => "insert",
            Command::InsertInto { .. } => "insert-into",
            Command::Delete { .. } => "delete",
            Command::Path { .. } => "path",
            Command::Tree { .. } => "tree",
            Command::Scc => "scc",
            Command::TopOrder => "toporder",
            Command::Dist { .. } => "dist",
        }
    }

    pub fn is_update(&self) -> bool {
        matches!(self, Command::Insert { .. } | Command::InsertInto { .. } | Command::Delete { .. })
    }
}

fn weight_text(w: Option<f64>) -> String {
    // `{:?}` keeps a decimal point, which marks weights inside insert-into
    w.map(|w| format!(" {w:?}")).unwrap_or_default()
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Insert { u, v, w } => write!(f, "insert {u} {v}{}", weight_text(*w)),
            Command::InsertInto { v, tails } => {
                write!(f, "insert-into {v}")?;
                for (u, w) in tails {
                    write!(f, " {u}{}", weight_text(*w))?;
                }
                Ok(())
            }
            Command::Delete { u, v } => write!(f, "delete {u} {v}"),
            Command::Path { s, t } => write!(f, "path {s} {t}"),
            Command::Tree { s } => write!(f, "tree {s}"),
            Command::Scc => write!(f, "scc"),
            Command::TopOrder => write!(f, "toporder"),
            Command::Dist { s, t } => write!(f, "dist {s} {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub n: usize,
    /// Weight cap `C` for weighted scripts.
    pub cap: Option<f64>,
    /// Commands with their 1-based source line.
    pub commands: Vec<(usize, Command)>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

struct Fields<'a> {
    line: usize,
    words: std::iter::Peekable<std::str::SplitWhitespace<'a>>,
}

impl Fields<'_> {
    fn vertex(&mut self, n: usize) -> Result<Vertex, ParseError> {
        let word = self.words.next().ok_or_else(|| err(self.line, "missing vertex"))?;
        let v: Vertex = word.parse().map_err(|_| err(self.line, format!("bad vertex `{word}`")))?;
        if v >= n {
            return Err(err(self.line, format!("vertex {v} out of range for n = {n}")));
        }
        Ok(v)
    }

    /// Optional weight: present when the next word contains a `.` or the
    /// script is weighted and a number follows in weight position.
    fn weight(&mut self, cap: Option<f64>, positional: bool) -> Result<Option<f64>, ParseError> {
        let Some(cap) = cap else { return Ok(None) };
        let Some(word) = self.words.peek().copied() else { return Ok(None) };
        if !positional && !word.contains('.') {
            return Ok(None);
        }
        self.words.next();
        let w: f64 = word.parse().map_err(|_| err(self.line, format!("bad weight `{word}`")))?;
        if !(1.0..=cap).contains(&w) {
            return Err(err(self.line, format!("weight {w} outside [1, {cap}]")));
        }
        Ok(Some(w))
    }

    fn done(&mut self) -> Result<(), ParseError> {
        match self.words.next() {
            None => Ok(()),
            Some(extra) => Err(err(self.line, format!("unexpected `{extra}`"))),
        }
    }
}

impl Script {
    pub fn parse(text: &str) -> Result<Script, ParseError> {
        let mut header: Option<(usize, Option<f64>)> = None;
        let mut commands = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.split('#').next().unwrap_or("");
            for part in raw.split(';') {
                let mut f = Fields { line, words: part.split_whitespace().peekable() };
                let Some(word) = f.words.next() else { continue };
                let Some((n, cap)) = header else {
                    if word != "init" {
                        return Err(err(line, "script must start with `init n`"));
                    }
                    let n_word = f.words.next().ok_or_else(|| err(line, "missing n"))?;
                    let n = n_word.parse().map_err(|_| err(line, format!("bad n `{n_word}`")))?;
                    let cap = match f.words.next() {
                        None => None,
                        Some("weighted") => {
                            let c = f.words.next().ok_or_else(|| err(line, "missing weight cap"))?;
                            let c: f64 = c.parse().map_err(|_| err(line, format!("bad weight cap `{c}`")))?;
                            if !(c >= 1.0 && c.is_finite()) {
                                return Err(err(line, "weight cap must be a finite number >= 1"));
                            }
                            Some(c)
                        }
                        Some(other) => return Err(err(line, format!("unexpected `{other}`"))),
                    };
                    f.done()?;
                    header = Some((n, cap));
                    continue;
                };
                let cmd = match word {
                    "insert" => {
                        let (u, v) = (f.vertex(n)?, f.vertex(n)?);
                        Command::Insert { u, v, w: f.weight(cap, true)? }
                    }
                    "insert-into" => {
                        let v = f.vertex(n)?;
                        let mut tails = Vec::new();
                        while f.words.peek().is_some() {
                            let u = f.vertex(n)?;
                            tails.push((u, f.weight(cap, false)?));
                        }
                        if tails.is_empty() {
                            return Err(err(line, "insert-into needs at least one tail"));
                        }
                        Command::InsertInto { v, tails }
                    }
                    "delete" => Command::Delete { u: f.vertex(n)?, v: f.vertex(n)? },
                    "path" => Command::Path { s: f.vertex(n)?, t: f.vertex(n)? },
                    "tree" => Command::Tree { s: f.vertex(n)? },
                    "scc" => Command::Scc,
                    "toporder" => Command::TopOrder,
                    "dist" => Command::Dist { s: f.vertex(n)?, t: f.vertex(n)? },
                    "init" => return Err(err(line, "duplicate init")),
                    other => return Err(err(line, format!("unknown command `{other}`"))),
                };
                f.done()?;
                commands.push((line, cmd));
            }
        }
        let (n, cap) = header.ok_or_else(|| err(1, "empty script"))?;
        Ok(Script { n, cap, commands })
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "init {}", self.n)?;
        if let Some(c) = self.cap {
            write!(f, " weighted {c}")?;
        }
        writeln!(f)?;
        for (_, c) in &self.commands {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
