#ifndef EMCONN_LEVI_CIVITA_HPP
#define EMCONN_LEVI_CIVITA_HPP

namespace emconn {

/// Permutation symbol over {0,1,2,3}: +1 for even permutations of (0,1,2,3),
/// -1 for odd ones, 0 when any index repeats or falls outside the range.
constexpr int levi_civita(int i, int j, int k, int l)
{
    const int idx[4] = {i, j, k, l};
    for (int a = 0; a < 4; ++a) {
        if (idx[a] < 0 || idx[a] > 3) {
            return 0;
        }
        for (int b = a + 1; b < 4; ++b) {
            if (idx[a] == idx[b]) {
                return 0;
            }
        }
    }
    int inversions = 0;
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            if (idx[a] > idx[b]) {
                ++inversions;
            }
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

static_assert(levi_civita(0, 1, 2, 3) == 1);
static_assert(levi_civita(1, 0, 2, 3) == -1);
static_assert(levi_civita(0, 0, 2, 3) == 0);

}  // namespace emconn

#endif
