//! Phoneme-driven talking-head generation at desk scale.
//!
//! The pipeline runs in two stages over discrete visual tokens: an
//! autoregressive transformer generates one facial keyframe per visual unit
//! (phoneme-conditioned through a configurable text-frame attention mask),
//! and a timestamp-aware selective state-space interpolator fills the frames
//! in between. Everything upstream of the model — the face corpus, the
//! tokenizer, the perceptual/identity feature networks — is procedural and
//! seeded, so every number the pipeline produces is reproducible.
//!
//! Module map:
//! - [`phoneme`]: text/alignment ingestion, viseme mapping, visual units
//! - [`synthface`]: parametric face rendering, landmarks, cropping, corpus
//! - [`vqtok`]: k-means patch codebook, encode/decode between images and
//!   token grids
//! - [`armodel`]: sequence layout, attention masks, the transformer itself,
//!   training and keyframe decoding
//! - [`losses`]: composite training loss (token CE, perceptual, identity,
//!   facial similarity) with fixed seeded feature networks
//! - [`interp`]: selective-scan inter-frame interpolation
//! - [`analysis`]: metrics, flicker analysis, scaling fits
//! - [`pipeline`]: configuration, orchestration and the CLI command layer

pub mod analysis;
pub mod armodel;
pub mod interp;
pub mod losses;
pub mod mat;
pub mod phoneme;
pub mod pipeline;
pub mod rng;
pub mod synthface;
pub mod vqtok;

pub use synthface::image::Image;
