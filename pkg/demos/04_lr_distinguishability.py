"""How hard is it to tell p from its constructed partner q?

Simulates the likelihood-ratio test (the optimal equal-prior distinguisher)
between each corpus member and its partner.  The partner construction
guarantees the best test still errs at least delta of the time; the observed
error rates sit near one half, far above that floor.

Run:  python demos/04_lr_distinguishability.py
"""

from advmean import AtomicDistribution, TrialConfig, construct_q, lr_test_error
from advmean import corpus


def main():
    cfg = TrialConfig(n=1000, delta=0.05, trials=4000, seed=0)
    floor = cfg.delta - 3 * (0.25 / cfg.trials) ** 0.5
    print(f"LR test with n = {cfg.n} samples per trial, {cfg.trials} trials")
    print(f"guaranteed error floor for indistinguishable pairs: {floor:.4f}\n")

    for name, d in corpus.all_members().items():
        q = construct_q(d, cfg.n, cfg.delta).q
        rep = lr_test_error(d, q, cfg)
        print(f"{name}: empirical error {rep['empirical_error']:.4f} "
              f"(type I {rep['type_i']:.4f}, type II {rep['type_ii']:.4f})")

    print("\ncontrol: a genuinely separated pair is easy to tell apart")
    p = AtomicDistribution([0.0, 1.0], [0.5, 0.5])
    far = AtomicDistribution([0.0, 1.0], [0.2, 0.8])
    rep = lr_test_error(p, far, TrialConfig(n=200, delta=0.05, trials=4000, seed=0))
    print(f"  shifted coin vs fair coin: empirical error {rep['empirical_error']:.4f}")


if __name__ == "__main__":
    main()
