/// `d^n`: enough beads for a long path or a high-degree hub.
pub fn path_or_hub_bound(d: usize, n: usize) -> Option<usize> {
    u32::try_from(n).ok().and_then(|n| d.checked_pow(n))
}

/// `m_0` where `m_θ = n` and `m_k = m_{k+1}^{pθ} + k`; `None` on overflow.
pub fn init_bound(theta: usize, n: usize, p: usize) -> Option<usize> {
    let exp = u32::try_from(p.checked_mul(theta)?).ok()?;
    let mut m = n;
    for k in (0..theta).rev() {
        m = m.checked_pow(exp)?.checked_add(k)?;
    }
    Some(m)
}

/// `t(n-1) + 1` beads guarantee a rail removable at `n` indices.
pub fn extract_path_bound(t: usize, n: usize) -> Option<usize> {
    t.checked_mul(n.checked_sub(1)?)?.checked_add(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(path_or_hub_bound(3, 2), Some(9));
        assert_eq!(init_bound(0, 5, 2), Some(5));
        assert_eq!(init_bound(1, 3, 2), Some(9));
        // m_1 = 3^4 + 1 = 82, m_0 = 82^4.
        assert_eq!(init_bound(2, 3, 2), Some(82usize.pow(4)));
        assert_eq!(init_bound(4, 9, 9), None);
        assert_eq!(extract_path_bound(2, 3), Some(5));
        assert_eq!(extract_path_bound(2, 0), None);
    }
}
