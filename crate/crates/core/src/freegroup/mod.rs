//! Free-group words over the meridian alphabet A and the arc alphabet X.

mod sample;
mod text;
mod word;

pub use sample::{
    make_s_relator, random_letter, random_word, sample_gamma_q, sample_power,
    sample_s_normal_closure, sample_s_relator,
};
pub use text::WordSyntaxError;
pub use word::{left_normed, right_normed, FreeGroupError, Generator, Letter, Meridian, Word};
