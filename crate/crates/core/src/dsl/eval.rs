use super::{BinOp, MeanExpr, Reducer};
use crate::error::{MeanError, Result};
use crate::vectors::{ValueVector, Weighting};

/// Evaluates an expression at `(w, x)`. Reducers run over every index.
pub fn eval_mean_expr(e: &MeanExpr, w: &Weighting, x: &ValueVector) -> Result<f64> {
    if w.len() != x.len() {
        return Err(MeanError::LengthMismatch {
            expected: w.len(),
            found: x.len(),
        });
    }
    eval(e, w.entries(), x.entries(), None)
}

fn fail(msg: impl Into<String>) -> MeanError {
    MeanError::Evaluation(msg.into())
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(fail(format!("{what} produced {v}")))
    }
}

fn eval(e: &MeanExpr, ws: &[f64], xs: &[f64], index: Option<usize>) -> Result<f64> {
    match e {
        MeanExpr::Literal(v) => Ok(*v),
        MeanExpr::Weight => index
            .map(|i| ws[i])
            .ok_or_else(|| fail("`w` used outside a reducer")),
        MeanExpr::Value => index
            .map(|i| xs[i])
            .ok_or_else(|| fail("`x` used outside a reducer")),
        MeanExpr::Neg(inner) => Ok(-eval(inner, ws, xs, index)?),
        MeanExpr::Reduce(r, body) => {
            if index.is_some() {
                return Err(fail("nested reducer"));
            }
            let mut acc = match r {
                Reducer::Sum => 0.0,
                Reducer::Prod => 1.0,
                Reducer::Max => f64::NEG_INFINITY,
                Reducer::Min => f64::INFINITY,
            };
            for i in 0..xs.len() {
                let v = eval(body, ws, xs, Some(i))?;
                acc = match r {
                    Reducer::Sum => acc + v,
                    Reducer::Prod => acc * v,
                    Reducer::Max => acc.max(v),
                    Reducer::Min => acc.min(v),
                };
            }
            finite(acc, "reducer")
        }
        MeanExpr::Binary(op, a, b) => {
            let a = eval(a, ws, xs, index)?;
            let b = eval(b, ws, xs, index)?;
            let v = match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err(fail("division by zero"));
                    }
                    a / b
                }
                BinOp::Pow => {
                    if a < 0.0 && b.fract() != 0.0 {
                        return Err(fail(format!("negative base {a} with non-integer exponent {b}")));
                    }
                    if a == 0.0 && b < 0.0 {
                        return Err(fail("division by zero (zero to a negative power)"));
                    }
                    // powf already gives 0^0 = 1
                    a.powf(b)
                }
            };
            finite(v, "arithmetic")
        }
    }
}
