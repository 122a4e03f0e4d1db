use super::{check_range, GadgetError};

/// Encodes `value < 2^(2ⁿ)` as `2ⁿ` blocks `#·address(i)·bᵢ`; addresses
/// and the special bits `b₀…b_{2ⁿ−1}` are written least significant bit
/// rightmost.
pub fn superblock_encode(n: usize, value: u64) -> Result<String, GadgetError> {
    check_range("superblock", n, 1, 5)?;
    let bits = 1usize << n;
    if bits < 64 && value >> bits != 0 {
        return Err(GadgetError::ValueTooLarge { value, bits });
    }
    let mut out = String::with_capacity((n + 2) * bits);
    for i in 0..bits {
        out.push('#');
        for k in (0..n).rev() {
            out.push(if i >> k & 1 == 1 { '1' } else { '0' });
        }
        out.push(if value >> (bits - 1 - i) & 1 == 1 { '1' } else { '0' });
    }
    Ok(out)
}

/// Inverts [`superblock_encode`]. Markers may be `#` or `✓`.
pub fn superblock_decode(n: usize, word: &str) -> Result<u64, GadgetError> {
    check_range("superblock", n, 1, 5)?;
    let bits = 1usize << n;
    let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.len() != (n + 2) * bits {
        let block = chars.len() / (n + 2);
        return Err(GadgetError::Decode {
            block: block.min(bits),
            message: format!("expected length {}, got {}", (n + 2) * bits, chars.len()),
        });
    }
    let mut value = 0u64;
    for (i, block) in chars.chunks(n + 2).enumerate() {
        let err = |message: String| GadgetError::Decode { block: i, message };
        if block[0] != '#' && block[0] != '✓' {
            return Err(err(format!("expected marker, found `{}`", block[0])));
        }
        let mut address = 0usize;
        for &c in &block[1..=n] {
            let d = c.to_digit(2).ok_or_else(|| err(format!("expected address bit, found `{c}`")))?;
            address = address << 1 | d as usize;
        }
        if address != i {
            return Err(err(format!("address {address} where {i} was expected")));
        }
        let c = block[n + 1];
        let d = c.to_digit(2).ok_or_else(|| err(format!("expected special bit, found `{c}`")))?;
        value = value << 1 | u64::from(d);
    }
    Ok(value)
}
