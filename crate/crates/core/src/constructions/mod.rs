//! Builders for the spaces realizing prescribed groups, and the small models
//! they are assembled from.
//!
//! Label scheme of constructed posets:
//! - `(g3,-1)`, `(g3,0)`, `(g3,g2)`: column points, group element then level;
//!   elements are named `g<i+1>` (or `h<i+1>`) after their table index `i`,
//!   levels are `-1`, `0` or the name of a generator;
//! - `*`: the glue point;
//! - `A@(h1,0)` … `D@…`: S-gadget points, `E@…` … `J@…` (with `Hp`): T-gadget
//!   points, `Tx<i>@…`/`Ty<i>@…`: points of the longer fences;
//! - `w@(h2,1)`: the first point of the chain attached above `A@(h2,0)`;
//! - `x_<i>`: points of a standalone `W_n`, `x_<i>@Wcopy_<k>` inside larger
//!   spaces; `t`: the connector.

mod columns;
mod models;
mod realization;
mod w;

pub use columns::{
    build_t_n_variant, build_x_f, build_x_h_g, build_x_h_star, build_x_star_g, is_t_gadget_label,
    strip_t_gadgets,
};
pub use models::{face_poset, minimal_sphere_model};
pub use realization::{build_prop62, build_thm13, Thm13Build};
pub use w::{build_w, w_copy, W_BASE_COVERS};
