/// All partitions of `n` into positive parts, each sorted descending, listed
/// with larger leading parts first: `3`, `2+1`, `1+1+1`.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(n, n, &mut current, &mut out);
    out
}

fn extend(remaining: i64, max_part: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        extend(remaining - part, part, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partition counts by the coin-change recurrence over allowed part sizes.
    fn partition_count(n: usize) -> usize {
        let mut ways = vec![0usize; n + 1];
        ways[0] = 1;
        for part in 1..=n {
            for total in part..=n {
                ways[total] += ways[total - part];
            }
        }
        ways[n]
    }

    #[test]
    fn small_cases() {
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(1), vec![vec![1]]);
        assert_eq!(partitions(0), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn counts_match_recurrence() {
        for n in 0..=20 {
            let all = partitions(n as i64);
            assert_eq!(all.len(), partition_count(n), "n={n}");
            for p in &all {
                assert_eq!(p.iter().sum::<i64>(), n as i64);
                assert!(p.windows(2).all(|w| w[0] >= w[1]));
            }
            let mut unique = all.clone();
            unique.sort();
            unique.dedup();
            assert_eq!(unique.len(), all.len());
        }
    }
}
