import numba
import numpy as np

@numba.jit(nopython=True)
def worm_kernel(indptr, neighbors, neighbor_edges, degrees, n, x, in_set, walker, uniforms, codes, sizes, states):
    """Runs len(uniforms) lazy worm steps in place.

       walker holds [b0, b1, odd count, |A|, bits of A] with b0 < b1 when the count is 2;
       the bits are only kept when there are at most 62 edges.
       After step t, codes[t] is -1 in C0 and b0 * n + b1 in C2, sizes[t] is |A| and
       states[t] the bits of A.
    """
    track = in_set.shape[0] <= 62
    b0 = walker[0]
    b1 = walker[1]
    count = walker[2]
    size = walker[3]
    bits = walker[4]
    for t in range(uniforms.shape[0]):
        if uniforms[t, 0] >= 0.5:
            if count == 0:
                pivot = int(uniforms[t, 1] * n)
                if pivot >= n:
                    pivot = n - 1
            else:
                if uniforms[t, 1] * 2 < 1.0:
                    pivot = b0
                else:
                    pivot = b1
            d = degrees[pivot]
            k = int(uniforms[t, 2] * d)
            if k >= d:
                k = d - 1
            other = neighbors[indptr[pivot] + k]
            e = neighbor_edges[indptr[pivot] + k]
            added = in_set[e] == 0

            if count == 0:
                new_count = 2
                if pivot < other:
                    nb0 = pivot
                    nb1 = other
                else:
                    nb0 = other
                    nb1 = pivot
            else:
                remaining = b1 if pivot == b0 else b0
                if other == remaining:
                    new_count = 0
                    nb0 = 0
                    nb1 = 0
                else:
                    new_count = 2
                    if remaining < other:
                        nb0 = remaining
                        nb1 = other
                    else:
                        nb0 = other
                        nb1 = remaining

            if count == 0 or new_count == 0:
                a = x if added else 1.0
            else:
                ratio = degrees[pivot] / degrees[other]
                a = ratio * x if added else ratio / x
                if a > 1.0:
                    a = 1.0

            if uniforms[t, 3] < a:
                if added:
                    in_set[e] = 1
                    size += 1
                else:
                    in_set[e] = 0
                    size -= 1
                if track:
                    bits ^= np.int64(1) << e
                count = new_count
                b0 = nb0
                b1 = nb1

        if count == 0:
            codes[t] = -1
        else:
            codes[t] = b0 * n + b1
        sizes[t] = size
        states[t] = bits

    walker[0] = b0
    walker[1] = b1
    walker[2] = count
    walker[3] = size
    walker[4] = bits
