//! Rule-based discourse segmentation.
//!
//! Text is split into sentences and tokens ([`textproc`]), discourse markers
//! from a [`lexicon`] open new segments ([`segmenter`]), and optional POS
//! rules merge segments back. [`eval`] scores a segmentation against a
//! reference by comparing the word pairs found on each side of every
//! boundary.
//!
//! ```
//! use eduseg::lexicon::{LoadOptions, MarkerLexicon};
//! use eduseg::segmenter::{segment, Strategy};
//!
//! let lexicon = MarkerLexicon::load(b"qui", "fr", LoadOptions::default()).unwrap();
//! let doc = segment(
//!     "La ville d'Avignon est la capitale du Vaucluse, qui est un département du sud de la France.",
//!     &lexicon,
//!     Strategy::Mu,
//!     None,
//! )
//! .unwrap();
//! assert_eq!(
//!     doc.render(),
//!     "[La ville d'Avignon est la capitale du Vaucluse,]_0\n[qui est un département du sud de la France.]_1\n"
//! );
//! ```

pub mod eval;
pub mod lexicon;
pub mod segmenter;
pub mod textproc;

pub use eval::{BoundaryPair, EvalReport};
pub use lexicon::{LoadOptions, MarkerLexicon};
pub use segmenter::{segment, SegmentedDocument, Strategy};
