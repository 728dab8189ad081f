pub mod config;
pub mod grammar;
pub mod learner;
pub mod lexicon;
pub mod teacher;
pub mod terms;
pub mod transducer;
