//! Minimum output entropy bounds for unital quantum channels.
//!
//! The crate revolves around three computable objects:
//!
//! * the exact `1 -> 2` norm of qubit-input channels, via a three-variable
//!   secular equation on the Bloch sphere ([`qubit_exact`]);
//! * the envelope `g_alpha(c)` giving the least Renyi entropy compatible
//!   with a given output purity ([`entropy`]);
//! * the `gamma` functional of a unital channel, whose square root bounds
//!   the `1 -> 2` norm of any tensor extension and therefore yields additive
//!   lower bounds on minimum output entropies and upper bounds on classical
//!   capacity ([`rep`], [`bounds`]).
//!
//! Channels live in [`channels`] (Kraus or basis-action form, with JSON
//! serialization), operator bases in [`bases`] (discrete Weyl and
//! Gell-Mann), and gradient-ascent reference optimizers in [`oracle`].
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example qubit_exact
//! cargo run --release --example weyl_basis
//! cargo run --release --example dwcc_gamma
//! cargo run --release --example complement_additivity
//! cargo run --release --example entropy_envelope
//! cargo run --release --example tensor_bounds
//! cargo run --release --example capacity_bound
//! cargo run --release --example oracle_sweep
//! cargo run --release --example p_to_2_norms
//! ```
//!
//! The thin `moebounds` binary exposes the same operations as subcommands
//! over channel JSON files; see the README for the file format.

pub mod bases;
pub mod bounds;
pub mod channels;
pub mod cli;
pub mod entropy;
pub mod linalg;
pub mod oracle;
pub mod qubit_exact;
pub mod rep;
pub mod sample;
