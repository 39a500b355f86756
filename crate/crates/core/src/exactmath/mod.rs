//! Exact integer arithmetic helpers and finite fields.

pub mod ff;
pub mod integer;
pub mod upoly;

pub use ff::{find_irreducible, Embedding, FFElem, FiniteField};
pub use integer::{factor_integer, is_prime, is_prime_u64, primes_up_to};
