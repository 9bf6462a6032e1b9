//! Minimal differentiable kernel: dense matrices, GraphSAGE, top-k pooling,
//! readout, contrastive and classification losses, Adam, and gradient
//! checking. Everything is double precision with hand-written backward
//! passes; analytic gradients are validated against central differences.

pub mod layers;
pub mod losses;
pub mod mat;
pub mod params;

pub use layers::{
    glorot, readout, readout_backward, relu, relu_backward, AdjList, Linear, PoolTrace,
    ReadoutTrace, SageGrads, SageLayer, SageTrace, TopKPool,
};
pub use losses::{
    bce_with_logit, cross_entropy, info_nce, ordinal_loss, ordinal_target, sigmoid, InfoNce,
};
pub use mat::{dot, l2_distance, l2_norm, Mat};
pub use params::{
    adam_step, grad_check, load_params, polyak_update, save_params, AdamHyper, AdamState, Params,
};
