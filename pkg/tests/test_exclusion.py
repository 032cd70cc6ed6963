import numpy as np

from matvar.exclusion import find_certificate, sample_array
from matvar.restriction import TestConfiguration


def test_samples_lie_on_the_configuration(menelaus):
    p = 2097143
    pts = sample_array(menelaus.construction, p, 20, seed=3)
    assert pts.shape == (20, 6, 3)  # sample, column, coordinate
    mats = pts.transpose(0, 2, 1)
    for triple in [(0, 1, 5), (0, 2, 4), (1, 2, 3), (3, 4, 5)]:
        for m in mats:
            sub = np.array(m[:, list(triple)], dtype=object)
            det = (sub[0, 0] * (sub[1, 1] * sub[2, 2] - sub[1, 2] * sub[2, 1])
                   - sub[0, 1] * (sub[1, 0] * sub[2, 2] - sub[1, 2] * sub[2, 0])
                   + sub[0, 2] * (sub[1, 0] * sub[2, 1] - sub[1, 1] * sub[2, 0]))
            assert det % p == 0


def test_menelaus_two_block_test_is_certified(menelaus):
    D = TestConfiguration.from_blocks("124|356", 6)
    cert = find_certificate(D, menelaus.construction, max_degree=6)
    assert cert is not None
    assert cert.column_degrees == (1, 1, 1, 1, 1, 1)
    assert "column degrees" in cert.reason()


def test_degenerate_test_is_not_certified(menelaus):
    # a configuration in the closure admits no separating ideal element
    D = TestConfiguration.from_blocks("123456", 6)
    assert find_certificate(D, menelaus.construction, max_degree=4) is None
