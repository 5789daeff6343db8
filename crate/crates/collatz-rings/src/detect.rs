//! Brent cycle detection over exact values. Canonical forms make equality
//! exact, so detection never misfires.

pub(crate) struct Detection<T> {
    pub preperiod: u64,
    pub cycle: Vec<T>,
    /// Step-function applications spent in the detection phase.
    pub steps: u64,
}

pub(crate) enum Outcome<T> {
    Found(Detection<T>),
    Exhausted { steps: u64 },
}

/// Brent's algorithm from `start`. `max_steps` bounds the applications of
/// `step` during detection; the preperiod recovery re-walks the explored
/// prefix and is not charged.
pub(crate) fn brent<T, F>(start: &T, step: F, max_steps: u64) -> Outcome<T>
where
    T: Clone + PartialEq,
    F: Fn(&T) -> T,
{
    if max_steps == 0 {
        return Outcome::Exhausted { steps: 0 };
    }
    let mut steps = 0u64;
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = start.clone();
    let mut hare = step(start);
    steps += 1;
    while tortoise != hare {
        if steps >= max_steps {
            return Outcome::Exhausted { steps };
        }
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = step(&hare);
        steps += 1;
        lam += 1;
    }
    // lam is the cycle length; two pointers lam apart find the entry point
    let mut mu = 0u64;
    let mut back = start.clone();
    let mut front = start.clone();
    for _ in 0..lam {
        front = step(&front);
    }
    while back != front {
        back = step(&back);
        front = step(&front);
        mu += 1;
    }
    let mut cycle = Vec::with_capacity(lam as usize);
    let mut g = back;
    for _ in 0..lam {
        cycle.push(g.clone());
        g = step(&g);
    }
    Outcome::Found(Detection {
        preperiod: mu,
        cycle,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_rho_shape() {
        // 0 -> 1 -> 2 -> 3 -> 4 -> 2
        let step = |x: &u32| if *x == 4 { 2 } else { x + 1 };
        match brent(&0, step, 100) {
            Outcome::Found(d) => {
                assert_eq!(d.preperiod, 2);
                assert_eq!(d.cycle, vec![2, 3, 4]);
            }
            Outcome::Exhausted { .. } => panic!("should find the cycle"),
        }
    }

    #[test]
    fn budget_exhaustion() {
        let step = |x: &u64| x + 1;
        assert!(matches!(
            brent(&0, step, 10),
            Outcome::Exhausted { steps: 10 }
        ));
    }
}
