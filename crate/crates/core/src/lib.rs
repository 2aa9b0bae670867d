//! Word problems, Nielsen algebra and inversion criteria for 2-orbifold
//! groups and the Seifert fibered groups that extend them.

pub mod oracle;
pub mod orbifold;
pub mod seifert;
pub mod words;
