//! Bit-range primitives over `u64` words, LSB-first.

#[inline]
pub(super) fn get(words: &[u64], idx: usize) -> bool {
    (words[idx / 64] >> (idx % 64)) & 1 == 1
}

#[inline]
fn mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Reads `n ≤ 64` bits starting at `pos`.
#[inline]
fn read(words: &[u64], pos: usize, n: usize) -> u64 {
    let (w, o) = (pos / 64, pos % 64);
    let mut v = words[w] >> o;
    if o != 0 && o + n > 64 {
        v |= words[w + 1] << (64 - o);
    }
    v & mask(n)
}

/// XORs the low `n ≤ 64` bits of `v` in at `pos`.
#[inline]
fn xor_at(words: &mut [u64], pos: usize, v: u64, n: usize) {
    let (w, o) = (pos / 64, pos % 64);
    words[w] ^= v << o;
    if o != 0 && o + n > 64 {
        words[w + 1] ^= v >> (64 - o);
    }
}

/// `dst[dst_pos..dst_pos+len] ^= src[src_pos..src_pos+len]`.
pub(super) fn xor_range(dst: &mut [u64], dst_pos: usize, src: &[u64], src_pos: usize, len: usize) {
    if len <= 64 {
        let v = read(src, src_pos, len);
        if v != 0 {
            xor_at(dst, dst_pos, v, len);
        }
        return;
    }
    // bring the destination to a word boundary, then move whole words
    let head = (64 - dst_pos % 64) % 64;
    let mut done = 0;
    if head > 0 {
        let v = read(src, src_pos, head);
        xor_at(dst, dst_pos, v, head);
        done = head;
    }
    let mut w = (dst_pos + done) / 64;
    while len - done >= 64 {
        dst[w] ^= read(src, src_pos + done, 64);
        w += 1;
        done += 64;
    }
    if done < len {
        let n = len - done;
        dst[w] ^= read(src, src_pos + done, n);
    }
}

/// `words[dst_pos..dst_pos+len] ^= words[src_pos..src_pos+len]` for
/// disjoint ranges of one buffer.
pub(super) fn xor_within(words: &mut [u64], dst_pos: usize, src_pos: usize, len: usize) {
    debug_assert!(src_pos + len <= dst_pos || dst_pos + len <= src_pos);
    let mut done = 0;
    while done < len {
        let n = (len - done).min(64);
        let v = read(words, src_pos + done, n);
        if v != 0 {
            xor_at(words, dst_pos + done, v, n);
        }
        done += n;
    }
}

/// True if any bit in `[pos, pos+len)` is set.
pub(super) fn any(words: &[u64], pos: usize, len: usize) -> bool {
    let mut done = 0;
    while done < len {
        let n = (len - done).min(64);
        if read(words, pos + done, n) != 0 {
            return true;
        }
        done += n;
    }
    false
}

pub(super) fn first_set(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Indices of set bits in `[pos, pos+len)`, ascending.
pub(super) fn ones(words: &[u64], pos: usize, len: usize) -> impl Iterator<Item = usize> + '_ {
    let end = pos + len;
    let first = pos / 64;
    let last = end.div_ceil(64);
    (first..last).flat_map(move |w| {
        let mut bits = words[w];
        if w == first {
            bits &= !0u64 << (pos % 64);
        }
        if w * 64 + 64 > end {
            bits &= mask(end - w * 64);
        }
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + t)
        })
    })
}
