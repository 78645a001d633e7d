//! Concrete syntax for programs and quintuple specifications, with a
//! pretty-printer whose output parses back to the same tree.
//!
//! ```text
//! prog  := par
//! par   := choice ("||" choice)*
//! choice:= seq ("+" seq)*
//! seq   := atom (";" atom)*
//! atom  := "skip" | ident ":=" expr | "test" "(" pred ")"
//!        | "if" pred "{" prog "}" ["else" "{" prog "}"]
//!        | "while" pred "{" prog "}" | "(" prog ")" ["*"]
//! spec  := ["rely" rel] ["guar" rel] "pre" cond "post" cond
//! rel   := relt (("&" | "|") relt)*
//! relt  := "id" | "top" | "unchanged" "{" idents "}" | "preserves" "(" pred ")"
//!        | "increasing" "(" ident ")" | "decreasing" "(" ident ")" | "(" rel ")"
//! cond  := ("end" | "test") "(" pred ")"
//! ```

use std::fmt;

use crate::automaton::SpecKind;
use crate::error::{Error, Result};
use crate::program::{decreasing, increasing, preserves, unchanged, Command, Expr, Pred};
use crate::state::{Relation, StateSpace};
use crate::verifier::{Quintuple, Spec};

const KEYWORDS: [&str; 7] = ["skip", "if", "else", "while", "test", "true", "false"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SYMBOLS: [&str; 19] = [
    ":=", "||", "&&", "<=", ";", "+", "-", "*", "(", ")", "{", "}", "|", "&", "!", "=", "<", ",", "#",
];

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = (line, column);
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            let n = text.parse().map_err(|_| Error::Syntax {
                line,
                column,
                message: format!("number {text} is too large"),
            })?;
            out.push(Token {
                tok: Tok::Num(n),
                line: start.0,
                column: start.1,
            });
            column += j - i;
            i = j;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[i..j].iter().collect()),
                line: start.0,
                column: start.1,
            });
            column += j - i;
            i = j;
            continue;
        }
        let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unexpected character {c:?}"),
            });
        };
        if *sym == "#" {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        out.push(Token {
            tok: Tok::Sym(sym),
            line: start.0,
            column: start.1,
        });
        i += sym.len();
        column += sym.len();
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.is_word(w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`, found {}", describe(self.peek()))))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{w}`, found {}", describe(self.peek()))))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.pos += 1;
                Ok(name)
            }
            other => Err(self.error(format!("expected a variable, found {}", describe(&other)))),
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::add(lhs, self.term()?);
            } else if self.eat_sym("-") {
                lhs = Expr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat_sym("*") {
            lhs = Expr::mul(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(Expr::Const(n))
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Ok(Expr::Var(self.ident()?)),
        }
    }

    fn pred(&mut self) -> Result<Pred> {
        let mut lhs = self.conj()?;
        while self.eat_sym("||") {
            lhs = Pred::or(lhs, self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Pred> {
        let mut lhs = self.neg()?;
        while self.eat_sym("&&") {
            lhs = Pred::and(lhs, self.neg()?);
        }
        Ok(lhs)
    }

    fn neg(&mut self) -> Result<Pred> {
        if self.eat_sym("!") {
            return Ok(Pred::not(self.neg()?));
        }
        if self.eat_word("true") {
            return Ok(Pred::True);
        }
        if self.eat_word("false") {
            return Ok(Pred::False);
        }
        if self.is_sym("(") {
            // either a parenthesized predicate or an expression operand
            let save = self.pos;
            self.pos += 1;
            if let Ok(p) = self.pred() {
                if self.eat_sym(")") && !self.at_comparison() && !self.at_arith() {
                    return Ok(p);
                }
            }
            self.pos = save;
        }
        self.comparison()
    }

    fn at_comparison(&self) -> bool {
        self.is_sym("=") || self.is_sym("<") || self.is_sym("<=")
    }

    fn at_arith(&self) -> bool {
        self.is_sym("+") || self.is_sym("-") || self.is_sym("*")
    }

    fn comparison(&mut self) -> Result<Pred> {
        let a = self.expr()?;
        let op = self.bump();
        let b = self.expr()?;
        match op {
            Tok::Sym("=") => Ok(Pred::Eq(a, b)),
            Tok::Sym("<") => Ok(Pred::Lt(a, b)),
            Tok::Sym("<=") => Ok(Pred::Le(a, b)),
            other => {
                self.pos -= 1;
                Err(self.error(format!("expected a comparison, found {}", describe(&other))))
            }
        }
    }

    fn par(&mut self) -> Result<Command> {
        let mut lhs = self.choice()?;
        while self.eat_sym("||") {
            lhs = Command::par(lhs, self.choice()?);
        }
        Ok(lhs)
    }

    fn choice(&mut self) -> Result<Command> {
        let mut lhs = self.seq()?;
        while self.eat_sym("+") {
            lhs = Command::choice(lhs, self.seq()?);
        }
        Ok(lhs)
    }

    fn seq(&mut self) -> Result<Command> {
        let mut lhs = self.atom()?;
        while self.eat_sym(";") {
            lhs = Command::seq(lhs, self.atom()?);
        }
        Ok(lhs)
    }

    fn block(&mut self) -> Result<Command> {
        self.expect_sym("{")?;
        let c = self.par()?;
        self.expect_sym("}")?;
        Ok(c)
    }

    fn atom(&mut self) -> Result<Command> {
        if self.eat_word("skip") {
            return Ok(Command::Skip);
        }
        if self.eat_word("test") {
            self.expect_sym("(")?;
            let p = self.pred()?;
            self.expect_sym(")")?;
            return Ok(Command::Test(p));
        }
        if self.eat_word("if") {
            let p = self.pred()?;
            let yes = self.block()?;
            let no = if self.eat_word("else") { self.block()? } else { Command::Skip };
            return Ok(Command::if_else(p, yes, no));
        }
        if self.eat_word("while") {
            let p = self.pred()?;
            let body = self.block()?;
            return Ok(Command::while_do(p, body));
        }
        if self.eat_sym("(") {
            let c = self.par()?;
            self.expect_sym(")")?;
            if self.eat_sym("*") {
                return Ok(Command::star(c));
            }
            return Ok(c);
        }
        let x = self.ident()?;
        self.expect_sym(":=")?;
        Ok(Command::Assign(x, self.expr()?))
    }

    fn rel(&mut self) -> Result<RelExpr> {
        let mut lhs = self.rel_term()?;
        loop {
            if self.eat_sym("&") {
                lhs = RelExpr::And(Box::new(lhs), Box::new(self.rel_term()?));
            } else if self.eat_sym("|") {
                lhs = RelExpr::Or(Box::new(lhs), Box::new(self.rel_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn rel_term(&mut self) -> Result<RelExpr> {
        if self.eat_sym("(") {
            let r = self.rel()?;
            self.expect_sym(")")?;
            return Ok(r);
        }
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            other => return Err(self.error(format!("expected a relation, found {}", describe(other)))),
        };
        self.pos += 1;
        match word.as_str() {
            "id" => Ok(RelExpr::Id),
            "top" => Ok(RelExpr::Top),
            "unchanged" => {
                self.expect_sym("{")?;
                let mut vars = Vec::new();
                if !self.is_sym("}") {
                    vars.push(self.ident()?);
                    while self.eat_sym(",") {
                        vars.push(self.ident()?);
                    }
                }
                self.expect_sym("}")?;
                Ok(RelExpr::Unchanged(vars))
            }
            "preserves" => {
                self.expect_sym("(")?;
                let p = self.pred()?;
                self.expect_sym(")")?;
                Ok(RelExpr::Preserves(p))
            }
            "increasing" | "decreasing" => {
                self.expect_sym("(")?;
                let x = self.ident()?;
                self.expect_sym(")")?;
                Ok(if word == "increasing" {
                    RelExpr::Increasing(x)
                } else {
                    RelExpr::Decreasing(x)
                })
            }
            _ => {
                self.pos -= 1;
                Err(self.error(format!("unknown relation `{word}`")))
            }
        }
    }

    fn cond(&mut self) -> Result<Cond> {
        let kind = if self.eat_word("end") {
            SpecKind::End
        } else if self.eat_word("test") {
            SpecKind::Test
        } else {
            return Err(self.error(format!("expected `end` or `test`, found {}", describe(self.peek()))));
        };
        self.expect_sym("(")?;
        let pred = self.pred()?;
        self.expect_sym(")")?;
        Ok(Cond { kind, pred })
    }

    fn spec(&mut self) -> Result<SpecText> {
        let rely = if self.eat_word("rely") { self.rel()? } else { RelExpr::Id };
        let guar = if self.eat_word("guar") && !self.is_word("pre") {
            self.rel()?
        } else {
            RelExpr::Top
        };
        self.expect_word("pre")?;
        let pre = self.cond()?;
        self.expect_word("post")?;
        let post = self.cond()?;
        Ok(SpecText { rely, guar, pre, post })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_pred(src: &str) -> Result<Pred> {
    let mut p = Parser::new(src)?;
    let e = p.pred()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_program(src: &str) -> Result<Command> {
    let mut p = Parser::new(src)?;
    let c = p.par()?;
    p.finish()?;
    Ok(c)
}

pub fn parse_spec(src: &str) -> Result<SpecText> {
    let mut p = Parser::new(src)?;
    let s = p.spec()?;
    p.finish()?;
    Ok(s)
}

/// A rely or guarantee as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelExpr {
    Id,
    Top,
    Unchanged(Vec<String>),
    Preserves(Pred),
    Increasing(String),
    Decreasing(String),
    And(Box<RelExpr>, Box<RelExpr>),
    Or(Box<RelExpr>, Box<RelExpr>),
}

impl RelExpr {
    pub fn resolve(&self, space: &StateSpace) -> Result<Relation> {
        let n = space.size();
        Ok(match self {
            RelExpr::Id => Relation::identity(n),
            RelExpr::Top => Relation::top(n),
            RelExpr::Unchanged(vars) => {
                let names: Vec<&str> = vars.iter().map(String::as_str).collect();
                unchanged(space, &names)?
            }
            RelExpr::Preserves(p) => preserves(&p.denote(space)?),
            RelExpr::Increasing(x) => increasing(space, x)?,
            RelExpr::Decreasing(x) => decreasing(space, x)?,
            RelExpr::And(a, b) => a.resolve(space)?.intersection(&b.resolve(space)?),
            RelExpr::Or(a, b) => a.resolve(space)?.union(&b.resolve(space)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cond {
    pub kind: SpecKind,
    pub pred: Pred,
}

impl Cond {
    pub fn resolve(&self, space: &StateSpace) -> Result<Spec> {
        Ok(Spec {
            kind: self.kind,
            states: self.pred.denote(space)?,
        })
    }
}

/// A parsed `rely … guar … pre … post …` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecText {
    pub rely: RelExpr,
    pub guar: RelExpr,
    pub pre: Cond,
    pub post: Cond,
}

impl SpecText {
    pub fn quintuple(&self, space: &StateSpace, prog: Command) -> Result<Quintuple> {
        prog.validate(space)?;
        Ok(Quintuple {
            rely: self.rely.resolve(space)?,
            guar: self.guar.resolve(space)?,
            pre: self.pre.resolve(space)?,
            post: self.post.resolve(space)?,
            prog,
        })
    }
}

// Printing. Binding strength, loosest first: `||`, `+`, `;`; and for
// predicates `||`, `&&`, `!`.

fn expr_prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Var(_) | Expr::Const(_) => 3,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    let wrap = expr_prec(e) < min;
    if wrap {
        f.write_str("(")?;
    }
    match e {
        Expr::Var(x) => f.write_str(x)?,
        Expr::Const(c) => write!(f, "{c}")?,
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_expr(f, a, 1)?;
            f.write_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_expr(f, b, 2)?;
        }
        Expr::Mul(a, b) => {
            write_expr(f, a, 2)?;
            f.write_str(" * ")?;
            write_expr(f, b, 3)?;
        }
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

fn pred_prec(p: &Pred) -> u8 {
    match p {
        Pred::Or(..) => 1,
        Pred::And(..) => 2,
        _ => 3,
    }
}

fn write_pred(f: &mut fmt::Formatter<'_>, p: &Pred, min: u8) -> fmt::Result {
    let wrap = pred_prec(p) < min;
    if wrap {
        f.write_str("(")?;
    }
    match p {
        Pred::True => f.write_str("true")?,
        Pred::False => f.write_str("false")?,
        Pred::Eq(a, b) => write!(f, "{a} = {b}")?,
        Pred::Lt(a, b) => write!(f, "{a} < {b}")?,
        Pred::Le(a, b) => write!(f, "{a} <= {b}")?,
        Pred::Or(a, b) => {
            write_pred(f, a, 1)?;
            f.write_str(" || ")?;
            write_pred(f, b, 2)?;
        }
        Pred::And(a, b) => {
            write_pred(f, a, 2)?;
            f.write_str(" && ")?;
            write_pred(f, b, 3)?;
        }
        Pred::Not(a) => {
            f.write_str("!")?;
            // `!(x = 1)` rather than `!x = 1`, so the operand is never
            // mistaken for an expression
            f.write_str("(")?;
            write_pred(f, a, 0)?;
            f.write_str(")")?;
        }
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pred(f, self, 0)
    }
}

fn cmd_prec(c: &Command) -> u8 {
    match c {
        Command::Par(..) => 1,
        Command::Choice(..) => 2,
        Command::Seq(..) => 3,
        // an assignment swallows a following `+` into its expression
        Command::Assign(..) => 3,
        _ => 4,
    }
}

fn write_cmd(f: &mut fmt::Formatter<'_>, c: &Command, min: u8) -> fmt::Result {
    let wrap = cmd_prec(c) < min;
    if wrap {
        f.write_str("(")?;
    }
    match c {
        Command::Skip => f.write_str("skip")?,
        Command::Assign(x, e) => write!(f, "{x} := {e}")?,
        Command::Seq(a, b) => {
            write_cmd(f, a, 3)?;
            f.write_str("; ")?;
            write_cmd(f, b, 4)?;
        }
        Command::Choice(a, b) => {
            write_cmd(f, a, 4)?;
            f.write_str(" + ")?;
            write_cmd(f, b, 4)?;
        }
        Command::Par(a, b) => {
            write_cmd(f, a, 1)?;
            f.write_str(" || ")?;
            write_cmd(f, b, 2)?;
        }
        Command::If(p, a, b) => {
            write!(f, "if {p} {{ ")?;
            write_cmd(f, a, 0)?;
            f.write_str(" } else { ")?;
            write_cmd(f, b, 0)?;
            f.write_str(" }")?;
        }
        Command::While(p, a) => {
            write!(f, "while {p} {{ ")?;
            write_cmd(f, a, 0)?;
            f.write_str(" }")?;
        }
        Command::Star(a) => {
            f.write_str("(")?;
            write_cmd(f, a, 0)?;
            f.write_str(")*")?;
        }
        Command::Atomic(r) => write!(f, "<atomic {} pairs>", r.len())?,
        Command::Test(p) => write!(f, "test({p})")?,
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cmd(f, self, 0)
    }
}

fn write_rel(f: &mut fmt::Formatter<'_>, r: &RelExpr, nested: bool) -> fmt::Result {
    match r {
        RelExpr::Id => f.write_str("id"),
        RelExpr::Top => f.write_str("top"),
        RelExpr::Unchanged(vs) => write!(f, "unchanged{{{}}}", vs.join(",")),
        RelExpr::Preserves(p) => write!(f, "preserves({p})"),
        RelExpr::Increasing(x) => write!(f, "increasing({x})"),
        RelExpr::Decreasing(x) => write!(f, "decreasing({x})"),
        RelExpr::And(a, b) | RelExpr::Or(a, b) => {
            if nested {
                f.write_str("(")?;
            }
            write_rel(f, a, false)?;
            f.write_str(if matches!(r, RelExpr::And(..)) { " & " } else { " | " })?;
            write_rel(f, b, true)?;
            if nested {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for RelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rel(f, self, false)
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SpecKind::End => "end",
            SpecKind::Test => "test",
        };
        write!(f, "{kind}({})", self.pred)
    }
}

impl fmt::Display for SpecText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rely {} guar {} pre {} post {}", self.rely, self.guar, self.pre, self.post)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Expr {
        Expr::var(x)
    }

    #[test]
    fn program_examples() {
        assert_eq!(parse_program("skip").unwrap(), Command::Skip);
        assert_eq!(
            parse_program("x := x + 2 || y := z").unwrap(),
            Command::par(
                Command::assign("x", Expr::add(v("x"), Expr::Const(2))),
                Command::assign("y", v("z"))
            )
        );
        assert_eq!(
            parse_program("while i < f { i := i + 2 }").unwrap(),
            Command::while_do(
                Pred::Lt(v("i"), v("f")),
                Command::assign("i", Expr::add(v("i"), Expr::Const(2)))
            )
        );
    }

    #[test]
    fn spec_examples() {
        let s = parse_spec("rely id guar top pre end(x=2 && y=2 && z=5) post end(x=4 && y=5 && z=5)").unwrap();
        assert_eq!(s.rely, RelExpr::Id);
        assert_eq!(s.guar, RelExpr::Top);
        assert_eq!(s.pre.kind, SpecKind::End);
        let r = parse_spec("rely unchanged{x} pre end(true) post end(true)").unwrap();
        assert_eq!(r.rely, RelExpr::Unchanged(vec!["x".into()]));
        assert_eq!(r.guar, RelExpr::Top);
        let g = parse_spec("rely id guar pre test(x = 1) post end(true)").unwrap();
        assert_eq!(g.guar, RelExpr::Top);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_program("x := 1;\n  := 2") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_spec("rely sideways pre end(true) post end(true)").is_err());
        assert!(parse_program("skip skip").is_err());
    }

    #[test]
    fn parenthesized_predicates_and_operands() {
        assert_eq!(parse_pred("(x + 1) < 2").unwrap(), Pred::Lt(Expr::add(v("x"), Expr::Const(1)), Expr::Const(2)));
        assert_eq!(parse_pred("(x < 2)").unwrap(), Pred::Lt(v("x"), Expr::Const(2)));
        assert_eq!(
            parse_pred("!(x = 1) || y <= 0").unwrap(),
            Pred::or(Pred::not(Pred::Eq(v("x"), Expr::Const(1))), Pred::Le(v("y"), Expr::Const(0)))
        );
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "x := 1 + 2 * (y - 3)",
            "(x := 1) + skip; y := 2",
            "if x < 1 && !(y = 2) { skip } else { (x := 0)* }",
            "a := 1 || b := 2 || (c := 3 || d := 4)",
            "test(x = 1 || x = 2 && y = 0); skip",
        ] {
            let c = parse_program(src).unwrap();
            assert_eq!(parse_program(&c.to_string()).unwrap(), c, "{src} -> {c}");
        }
        let s = parse_spec("rely unchanged{x,y} & (preserves(x < 2) | increasing(z)) pre end(true) post test(x = 1)").unwrap();
        assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
    }
}
