//! The fixed ring contexts used by the counterexample construction.
//!
//! Each is built once and shared, so context comparisons hit the pointer fast
//! path.

use std::sync::OnceLock;

use crate::ring::{Ctx, RingContext};

macro_rules! shared_ctx {
    ($(#[$doc:meta])* $name:ident, [$(($v:expr, $inv:expr)),* $(,)?]) => {
        $(#[$doc])*
        pub fn $name() -> Ctx {
            static CELL: OnceLock<Ctx> = OnceLock::new();
            CELL.get_or_init(|| RingContext::new(&[$(($v, $inv)),*])).clone()
        }
    };
}

shared_ctx!(
    /// `Q[x, x^-1, y]`: the plane, with `x` a unit so shifts like `x^-2` fit.
    /// Elements of `Q[x,y]` are the members with nonnegative exponents.
    xy,
    [("x", true), ("y", false)]
);

shared_ctx!(
    /// `Q[x, x^-1, Y]`: coordinates after the substitution `y = Y + f(x)`.
    x_cap_y,
    [("x", true), ("Y", false)]
);

shared_ctx!(
    /// `Q[u, u^-1, v]`: the base plane under `u = x^2`, `v = y`.
    uv,
    [("u", true), ("v", false)]
);

shared_ctx!(
    /// `Q[w, w^-1]` with `w^e = u`, the ring carrying Puiseux substitutions.
    w,
    [("w", true)]
);

shared_ctx!(
    /// `S = Q[x, y, z1, z2]`.
    s_ring,
    [("x", false), ("y", false), ("z1", false), ("z2", false)]
);

shared_ctx!(
    /// `Q[x, x^-1, z2]`, the target of the quotient map `S -> S/J`.
    quotient,
    [("x", true), ("z2", false)]
);
