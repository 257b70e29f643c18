use super::CompressError;
use crate::bench::Prng;

/// Largest Fibonacci word [`fibonacci_word`] will materialize.
pub const FIBONACCI_MAX_LEN: u64 = 1 << 31;

/// The Fibonacci word `F(k)`: `F(1) = "b"`, `F(2) = "a"`, `F(k) = F(k-1) F(k-2)`.
pub fn fibonacci_word(order: u32) -> Result<Vec<u8>, CompressError> {
    if order == 0 {
        return Err(CompressError::ZeroOrder);
    }
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 2..order {
        (a, b) = (b, a + b);
        if b > FIBONACCI_MAX_LEN {
            return Err(CompressError::OverBudget {
                order,
                limit: FIBONACCI_MAX_LEN,
            });
        }
    }
    if order == 1 {
        return Ok(b"b".to_vec());
    }
    // F(k) is a prefix of F(k+1), so grow one buffer in place
    let mut word = Vec::with_capacity(b as usize);
    word.push(b'a');
    let (mut prev_len, mut cur_len) = (1usize, 1usize); // |F(1)|, |F(2)|
    let first = b"b";
    for _ in 2..order {
        // F(k+1) = F(k) F(k-1), and F(k-1) is a prefix of F(k) except for k-1 = 1
        if prev_len == 1 && cur_len == 1 {
            word.extend_from_slice(first);
        } else {
            word.extend_from_within(..prev_len);
        }
        (prev_len, cur_len) = (cur_len, prev_len + cur_len);
    }
    debug_assert_eq!(word.len(), cur_len);
    Ok(word)
}

/// [`repetitive_text_over`] on the DNA alphabet `acgt`.
pub fn repetitive_text(base_len: usize, copies: usize, mutation_rate: f64, seed: u64) -> Vec<u8> {
    repetitive_text_over(b"acgt", base_len, copies, mutation_rate, seed)
        .expect("fixed alphabet is valid")
}

/// Concatenates `copies` copies of a random base string, each position of each
/// copy replaced by a different random symbol with probability `mutation_rate`.
pub fn repetitive_text_over(
    alphabet: &[u8],
    base_len: usize,
    copies: usize,
    mutation_rate: f64,
    seed: u64,
) -> Result<Vec<u8>, CompressError> {
    if alphabet.is_empty() {
        return Err(CompressError::InvalidParameter(
            "alphabet must be non-empty",
        ));
    }
    if !(0.0..=1.0).contains(&mutation_rate) {
        return Err(CompressError::InvalidParameter(
            "mutation rate must lie in [0, 1]",
        ));
    }
    let mut rng = Prng::new(seed);
    let sigma = alphabet.len() as u64;
    let base: Vec<u8> = (0..base_len)
        .map(|_| alphabet[rng.below(sigma) as usize])
        .collect();
    let mut out = Vec::with_capacity(base_len * copies);
    for _ in 0..copies {
        for &c in &base {
            if mutation_rate > 0.0 && sigma > 1 && rng.next_f64() < mutation_rate {
                let at = alphabet.iter().position(|&x| x == c).unwrap() as u64;
                let shift = 1 + rng.below(sigma - 1);
                out.push(alphabet[((at + shift) % sigma) as usize]);
            } else {
                out.push(c);
            }
        }
    }
    Ok(out)
}
