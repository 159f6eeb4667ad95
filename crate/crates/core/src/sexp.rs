//! Minimal s-expression reader and printer shared by every textual format.
//!
//! Atoms are maximal runs of characters other than whitespace, `(`, `)` and
//! `;`. A `;` starts a comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

/// Byte offset and line of a parse problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SexpError {
    pub line: usize,
    pub message: String,
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Sexp {
        Sexp::Atom(s.into())
    }

    pub fn list(items: impl IntoIterator<Item = Sexp>) -> Sexp {
        Sexp::List(items.into_iter().collect())
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::Atom(_) => None,
            Sexp::List(items) => Some(items),
        }
    }

    /// The head atom of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }

    /// Renders on one line.
    pub fn to_compact(&self) -> String {
        self.to_string()
    }

    /// Renders with line breaks once a list exceeds `width` columns.
    pub fn to_pretty(&self, width: usize) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, 0, width);
        out
    }

    fn pretty_into(&self, out: &mut String, indent: usize, width: usize) {
        let flat = self.to_compact();
        match self {
            Sexp::List(items) if indent + flat.len() > width && items.len() > 1 => {
                out.push('(');
                // Keep the head and any leading keyword/value pairs that fit on the first line.
                let mut first_line = items[0].to_compact();
                let mut i = 1;
                while i + 1 < items.len()
                    && items[i].as_atom().is_some_and(|a| a.starts_with(':'))
                {
                    let pair = format!(" {} {}", items[i].to_compact(), items[i + 1].to_compact());
                    if indent + 1 + first_line.len() + pair.len() > width {
                        break;
                    }
                    first_line.push_str(&pair);
                    i += 2;
                }
                out.push_str(&first_line);
                for item in &items[i..] {
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    item.pretty_into(out, indent + 2, width);
                }
                out.push(')');
            }
            _ => out.push_str(&flat),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses every top-level expression in `src`.
pub fn parse_all(src: &str) -> Result<Vec<Sexp>, SexpError> {
    let mut reader = Reader { chars: src.char_indices().peekable(), line: 1 };
    let mut out = Vec::new();
    while let Some(e) = reader.next_expr()? {
        out.push(e);
    }
    Ok(out)
}

/// Parses exactly one expression.
pub fn parse_one(src: &str) -> Result<Sexp, SexpError> {
    let mut all = parse_all(src)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(SexpError { line: 1, message: "empty input".into() }),
        n => Err(SexpError { line: 1, message: format!("expected one expression, found {n}") }),
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
}

impl Reader<'_> {
    fn skip_trivia(&mut self) {
        while let Some(&(_, c)) = self.chars.peek() {
            if c == ';' {
                while let Some(&(_, c)) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.chars.next();
                }
            } else if c.is_whitespace() {
                if c == '\n' {
                    self.line += 1;
                }
                self.chars.next();
            } else {
                break;
            }
        }
    }

    fn next_expr(&mut self) -> Result<Option<Sexp>, SexpError> {
        self.skip_trivia();
        let Some(&(_, c)) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            ')' => Err(SexpError { line: self.line, message: "unexpected ')'".into() }),
            '(' => {
                let open_line = self.line;
                self.chars.next();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => {
                            return Err(SexpError {
                                line: open_line,
                                message: "unclosed '('".into(),
                            })
                        }
                        Some(&(_, ')')) => {
                            self.chars.next();
                            return Ok(Some(Sexp::List(items)));
                        }
                        Some(_) => items.push(self.next_expr()?.expect("peeked a token")),
                    }
                }
            }
            _ => {
                let mut atom = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    self.chars.next();
                }
                Ok(Some(Sexp::Atom(atom)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_and_comments() {
        let src = "; header\n(forall (x i) ; binder\n (P x))\n";
        let e = parse_one(src).unwrap();
        assert_eq!(e.to_compact(), "(forall (x i) (P x))");
        assert_eq!(e.head(), Some("forall"));
    }

    #[test]
    fn reports_unbalanced_input() {
        assert_eq!(parse_one("(a (b)").unwrap_err().line, 1);
        assert!(parse_one(")").is_err());
        assert!(parse_one("a b").is_err());
    }

    #[test]
    fn pretty_output_reparses_to_the_same_tree() {
        let e = parse_one("(impE :concl (seq () Q) :A P :B Q (axiom :concl (seq (P) P)) (axiom :concl (seq (P) (=> P Q))))").unwrap();
        let pretty = e.to_pretty(30);
        assert!(pretty.contains('\n'));
        assert_eq!(parse_one(&pretty).unwrap(), e);
    }
}
