//! End-to-end checks for `chl-core`, run as `cargo test -p chl-validation --test acceptance`.
