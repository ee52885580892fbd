//! The `T_n` tangle family.
//!
//! `T_n` is the algebraic tangle with two vertical boxes `-1/m`
//! (`m = 2n` or `m = 2n-1`) joined by a junction of single negative
//! crossings and summed side by side:
//!
//! ```text
//!   T_n  =  (box * [0,-1])  +  (box * [0,-1] * [0,-1])
//! ```
//!
//! so the left column carries `m+1` crossings and the right one `m+2`.
//! The columns always have opposite parity, which makes the numerator
//! closure a knot, and for every `n >= 1` and either box the result is a
//! connected, alternating, type 2, strongly alternating tangle that is
//! locally unknotted by construction. Those properties are enforced by the
//! test suite, not assumed.

use super::{synthesize, DiagramError, PlanarDiagram};
use crate::expr::TangleExpr;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoxParity {
    /// boxes carry `-1/(2n)`
    Even,
    /// boxes carry `-1/(2n-1)`
    Odd,
}

/// The expression tree of `T_n`; each box appears verbatim as a `[0,-m]` leaf.
pub fn tn_expr(n: u32, parity: BoxParity) -> TangleExpr {
    assert!(n >= 1, "T_n needs n >= 1");
    let m = match parity {
        BoxParity::Even => 2 * n as i64,
        BoxParity::Odd => 2 * n as i64 - 1,
    };
    let boxed = || TangleExpr::rational(&[0, -m]);
    let junction = || TangleExpr::rational(&[0, -1]);
    let left = TangleExpr::product(boxed(), junction());
    let right = TangleExpr::product(boxed(), TangleExpr::product(junction(), junction()));
    TangleExpr::sum(left, right)
}

/// Synthesized standard diagram of `T_n`.
pub fn build_tn(n: u32, parity: BoxParity) -> Result<PlanarDiagram, DiagramError> {
    synthesize(&tn_expr(n, parity))
}
