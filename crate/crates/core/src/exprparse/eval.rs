use thiserror::Error;

use super::{BinOp, Constant, Expr, Func, Var};
use crate::scalar::Scalar;

/// Why a node failed to produce a finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFailure {
    DivisionByZero,
    LogOfNonPositive,
    SqrtOfNegative,
    NegativeBaseFractionalExponent,
    NonFinite,
}

impl std::fmt::Display for EvalFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvalFailure::DivisionByZero => "division by zero",
            EvalFailure::LogOfNonPositive => "log of a non-positive value",
            EvalFailure::SqrtOfNegative => "sqrt of a negative value",
            EvalFailure::NegativeBaseFractionalExponent => "negative base raised to a non-integer power",
            EvalFailure::NonFinite => "non-finite result",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("cannot evaluate `{node}`: {failure} (operand {operand})")]
pub struct EvalError {
    /// Rendering of the offending node.
    pub node: String,
    pub failure: EvalFailure,
    pub operand: f64,
}

/// Integer exponents up to this magnitude use repeated multiplication.
const SMALL_INT_POWER: i32 = 64;

impl Expr {
    /// Evaluates at the given bindings. Every intermediate must be finite.
    pub fn evaluate<T: Scalar>(&self, x: T, eps: T) -> Result<T, EvalError> {
        let fail = |failure, operand: T| EvalError {
            node: self.to_string(),
            failure,
            operand: operand.as_f64(),
        };
        let value = match self {
            Expr::Num(v) => T::lit(*v),
            Expr::Var(Var::X) => x,
            Expr::Var(Var::Eps) => eps,
            Expr::Const(Constant::Pi) => T::PI(),
            Expr::Const(Constant::E) => T::E(),
            Expr::Neg(inner) => -inner.evaluate(x, eps)?,
            Expr::Binary { op, lhs, rhs } => {
                let a = lhs.evaluate(x, eps)?;
                let b = rhs.evaluate(x, eps)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == T::zero() {
                            return Err(fail(EvalFailure::DivisionByZero, b));
                        }
                        a / b
                    }
                    BinOp::Pow => power(a, b).map_err(|f| fail(f, a))?,
                }
            }
            Expr::Call { func, arg } => {
                let v = arg.evaluate(x, eps)?;
                match func {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Tan => v.tan(),
                    Func::Sinh => v.sinh(),
                    Func::Cosh => v.cosh(),
                    Func::Tanh => v.tanh(),
                    Func::Exp => v.exp(),
                    Func::Log => {
                        if v <= T::zero() {
                            return Err(fail(EvalFailure::LogOfNonPositive, v));
                        }
                        v.ln()
                    }
                    Func::Sqrt => {
                        if v < T::zero() {
                            return Err(fail(EvalFailure::SqrtOfNegative, v));
                        }
                        v.sqrt()
                    }
                    Func::Abs => v.abs(),
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(fail(EvalFailure::NonFinite, value))
        }
    }
}

fn power<T: Scalar>(base: T, exponent: T) -> Result<T, EvalFailure> {
    if exponent.fract() == T::zero() {
        let k = exponent.to_i32().filter(|k| k.abs() <= SMALL_INT_POWER);
        if let Some(k) = k {
            let mut acc = T::one();
            for _ in 0..k.abs() {
                acc = acc * base;
            }
            if k < 0 {
                if acc == T::zero() {
                    return Err(EvalFailure::DivisionByZero);
                }
                acc = T::one() / acc;
            }
            return Ok(acc);
        }
        if base == T::zero() && exponent < T::zero() {
            return Err(EvalFailure::DivisionByZero);
        }
        return Ok(base.powf(exponent));
    }
    if base < T::zero() {
        return Err(EvalFailure::NegativeBaseFractionalExponent);
    }
    if base == T::zero() {
        return if exponent > T::zero() {
            Ok(T::zero())
        } else {
            Err(EvalFailure::DivisionByZero)
        };
    }
    Ok(base.powf(exponent))
}
