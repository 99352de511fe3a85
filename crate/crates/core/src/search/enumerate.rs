use crate::graph::{ClosedQuipuSpec, OpenQuipuSpec};

/// Calls `f` with every sequence `x` of `mins.len()` entries, `x[i] ≥ mins[i]`,
/// summing to `total`.
fn compositions(total: usize, mins: &[usize], f: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, mins: &[usize], acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        let i = acc.len();
        if i + 1 == mins.len() {
            if rest >= mins[i] {
                acc.push(rest);
                f(acc);
                acc.pop();
            }
            return;
        }
        let tail_min: usize = mins[i + 1..].iter().sum();
        if rest < mins[i] + tail_min {
            return;
        }
        for x in mins[i]..=rest - tail_min {
            acc.push(x);
            go(rest - x, mins, acc, f);
            acc.pop();
        }
    }
    if mins.is_empty() {
        return;
    }
    go(total, mins, &mut Vec::with_capacity(mins.len()), f);
}

/// Every canonical open quipu of order `n`, T-shapes (`r = 0`) included,
/// sorted. Empty for `n < 4`.
pub fn enumerate_open_quipus(n: usize) -> Vec<OpenQuipuSpec> {
    let mut out = Vec::new();
    if n < 4 {
        return out;
    }
    // legs a ≤ b ≤ c around one junction
    for a in 1..n {
        for b in a..n {
            let Some(c) = (n - 1).checked_sub(a + b) else {
                break;
            };
            if c < b {
                break;
            }
            out.push(OpenQuipuSpec::t_shape(a, b, c).expect("positive legs"));
        }
    }
    // r ≥ 1: entries laid out as m0, k0, k1, m1, …, k_{r−1}, m_{r−1}, k_r, m_r, k_{r+1}
    let mut r = 1;
    while 2 * (r + 1) + 2 <= n {
        let mut mins = vec![1, 1];
        for _ in 1..r {
            mins.extend([0, 1]);
        }
        mins.extend([0, 1, 1]);
        compositions(n - (r + 1), &mins, &mut |x| {
            let (m0, k0) = (x[0], x[1]);
            let (m_last, k_last) = (x[x.len() - 2], x[x.len() - 1]);
            if k0 < m0 || k_last < m_last {
                return;
            }
            let mut k = vec![k0];
            let mut m = vec![m0];
            for pair in x[2..x.len() - 1].chunks(2) {
                k.push(pair[0]);
                m.push(pair[1]);
            }
            k.push(k_last);
            let spec = OpenQuipuSpec::new(k, m).expect("valid composition");
            if spec.is_canonical() {
                out.push(spec);
            }
        });
        r += 1;
    }
    out.sort();
    out
}

/// Every canonical closed quipu of order `n`, the bare cycle included,
/// sorted. Empty for `n < 3`.
pub fn enumerate_closed_quipus(n: usize) -> Vec<ClosedQuipuSpec> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    out.push(ClosedQuipuSpec::cycle(n).expect("n >= 3"));
    // entries laid out as m1, k1, …, m_r, k_r
    let mut r = 1;
    while 2 * r <= n {
        let mins: Vec<usize> = (0..r).flat_map(|_| [1, 0]).collect();
        compositions(n - r, &mins, &mut |x| {
            let m: Vec<usize> = x.iter().step_by(2).copied().collect();
            let k: Vec<usize> = x.iter().skip(1).step_by(2).copied().collect();
            if let Ok(spec) = ClosedQuipuSpec::new(k, m) {
                if spec.is_canonical() {
                    out.push(spec);
                }
            }
        });
        r += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(
            enumerate_closed_quipus(3),
            vec![ClosedQuipuSpec::cycle(3).unwrap()]
        );
        let t7: Vec<_> = enumerate_open_quipus(7)
            .into_iter()
            .filter(|s| s.r() == 0)
            .collect();
        // partitions of 6 into three positive parts: 1+1+4, 1+2+3, 2+2+2
        assert_eq!(t7.len(), 3);
        assert_eq!(enumerate_open_quipus(4).len(), 1);
        assert!(enumerate_open_quipus(3).is_empty());
    }

    #[test]
    fn specs_have_the_requested_order() {
        for n in 4..=12 {
            for s in enumerate_open_quipus(n) {
                assert_eq!(s.order(), n);
                assert!(s.is_canonical());
            }
            for s in enumerate_closed_quipus(n) {
                assert_eq!(s.order(), n);
                assert!(s.is_canonical());
            }
        }
    }
}
