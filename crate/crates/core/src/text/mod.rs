//! Parsers and printers for the plain-text file formats.
pub mod lexer;
pub mod olog;

pub use lexer::SyntaxError;
pub use olog::{
    parse_conjecture, parse_element, parse_instance, parse_lin_instance, parse_morphism, parse_object, parse_olog,
    print_instance, print_morphism, print_olog,
};
