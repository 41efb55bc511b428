use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, MeanExpr, ParseError, Reducer};

const BASE_STARTS: &[&str] = &["number", "`w`", "`x`", "`sum`", "`prod`", "`max`", "`min`", "`(`", "`-`"];

/// Parses DSL source into an expression tree.
pub fn parse_mean_expr(source: &str) -> Result<MeanExpr, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        in_reducer: false,
    };
    let expr = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here(
            format!("unexpected {}", p.peek().tok.describe()),
            &["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"],
        ));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    in_reducer: bool,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: String, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            let want = tok.describe();
            Err(self.error_here(
                format!("unexpected {}", self.peek().tok.describe()),
                &[want.as_str()],
            ))
        }
    }

    fn expr(&mut self) -> Result<MeanExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = MeanExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<MeanExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = MeanExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<MeanExpr, ParseError> {
        let base = self.base()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let exp = self.factor()?;
            return Ok(MeanExpr::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MeanExpr, ParseError> {
        match self.peek().tok.clone() {
            Tok::Number(v) => {
                self.bump();
                Ok(MeanExpr::Literal(v))
            }
            Tok::Minus => {
                self.bump();
                Ok(MeanExpr::Neg(Box::new(self.base()?)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let reducer = match name.as_str() {
                    "w" | "x" => {
                        if !self.in_reducer {
                            return Err(self.error_here(
                                format!("`{name}` may only appear inside sum/prod/max/min"),
                                &[],
                            ));
                        }
                        self.bump();
                        return Ok(if name == "w" {
                            MeanExpr::Weight
                        } else {
                            MeanExpr::Value
                        });
                    }
                    "sum" => Reducer::Sum,
                    "prod" => Reducer::Prod,
                    "max" => Reducer::Max,
                    "min" => Reducer::Min,
                    _ => {
                        return Err(self.error_here(format!("unknown identifier `{name}`"), BASE_STARTS))
                    }
                };
                if self.in_reducer {
                    return Err(self.error_here(format!("nested reducer `{name}`"), &[]));
                }
                self.bump();
                self.expect(Tok::LParen)?;
                self.in_reducer = true;
                let body = self.expr();
                self.in_reducer = false;
                let body = body?;
                self.expect(Tok::RParen)?;
                Ok(MeanExpr::Reduce(reducer, Box::new(body)))
            }
            other => Err(self.error_here(format!("unexpected {}", other.describe()), BASE_STARTS)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use MeanExpr::*;

    fn b(e: MeanExpr) -> Box<MeanExpr> {
        Box::new(e)
    }

    #[test]
    fn arithmetic_mean() {
        assert_eq!(
            parse_mean_expr("sum(w*x)").unwrap(),
            Reduce(Reducer::Sum, b(Binary(BinOp::Mul, b(Weight), b(Value))))
        );
    }

    #[test]
    fn quadratic_mean() {
        let e = parse_mean_expr("sum(w*x^2)^0.5").unwrap();
        let inner = Binary(BinOp::Mul, b(Weight), b(Binary(BinOp::Pow, b(Value), b(Literal(2.0)))));
        assert_eq!(e, Binary(BinOp::Pow, b(Reduce(Reducer::Sum, b(inner))), b(Literal(0.5))));
    }

    #[test]
    fn power_is_right_associative_and_binds_tighter() {
        let e = parse_mean_expr("2^3^2").unwrap();
        assert_eq!(
            e,
            Binary(BinOp::Pow, b(Literal(2.0)), b(Binary(BinOp::Pow, b(Literal(3.0)), b(Literal(2.0)))))
        );
        let e = parse_mean_expr("1 - 2 * 3").unwrap();
        assert!(matches!(e, Binary(BinOp::Sub, _, _)));
        // unary minus applies to the base, before the power
        let e = parse_mean_expr("-2^2").unwrap();
        assert_eq!(e, Binary(BinOp::Pow, b(Neg(b(Literal(2.0)))), b(Literal(2.0))));
    }

    #[test]
    fn scoping_errors() {
        let e = parse_mean_expr("w + sum(x)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert!(e.message.contains("inside"));
        let e = parse_mean_expr("sum(max(x))").unwrap_err();
        assert!(e.message.contains("nested"));
        assert_eq!(e.column, 5);
    }

    #[test]
    fn syntax_errors_report_expectations() {
        let e = parse_mean_expr("sum(w*").unwrap_err();
        assert!(e.message.contains("end of input"));
        assert!(e.expected.contains(&"`x`".to_string()));
        let e = parse_mean_expr("sum(w*x))").unwrap_err();
        assert_eq!(e.column, 9);
        let e = parse_mean_expr("sum w").unwrap_err();
        assert_eq!(e.expected, vec!["`(`".to_string()]);
        let e = parse_mean_expr("avg(x)").unwrap_err();
        assert!(e.message.contains("unknown identifier"));
        let e = parse_mean_expr("sum(w*x)\n  + )").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.to_string().starts_with("line 2, column 5"));
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "sum(w*x)",
            "sum(w*x^2)^0.5",
            "(sum(w*x)+sum(w*x^2)^0.5)/2",
            "-2^2 - --3",
            "max(x*w^0) * 1e-7 + 1e300",
            "prod(x^w)",
        ] {
            let e = parse_mean_expr(src).unwrap();
            assert_eq!(parse_mean_expr(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }
}
