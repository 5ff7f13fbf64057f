//! Encoding and decoding circuits for entanglement-assisted convolutional codes.

mod construct;
mod gates;
mod infinite;
mod synth;

pub use construct::{
    css_construct, free_ent_construct, general_construct, verify_encoding, CodeClass, EAQConvCode, VerifyReport,
};
pub use gates::{
    apply_conv_gate, apply_conv_gate_mut, apply_gate_to_row, apply_gates, invert_gates, parse_gate_list, ConvGate,
    GateCoeff,
};
pub use infinite::{realize_infinite_depth, WindowCircuit};
