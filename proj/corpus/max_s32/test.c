#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

int32_t max_s32(const int32_t *x, size_t n);

static uint32_t seed = 2024u;
static int32_t next_int(void)
{
    seed ^= seed << 13;
    seed ^= seed >> 17;
    seed ^= seed << 5;
    return (int32_t)seed;
}

int main(void)
{
    static const size_t sizes[] = {0, 1, 2, 3, 4, 5, 8, 13, 64, 65, 300, 1025};
    for (size_t s = 0; s < sizeof sizes / sizeof sizes[0]; s++) {
        size_t n = sizes[s];
        for (int where = 0; where < 3; where++) {
            int32_t *x = malloc((n + 1) * sizeof(int32_t));
            for (size_t i = 0; i < n; i++)
                x[i] = -(next_int() & 0x7fffffff);
            // plant the maximum at the start, middle or end to catch tail mistakes
            if (n > 0)
                x[where == 0 ? 0 : where == 1 ? n / 2 : n - 1] = 12345;
            int32_t want = INT32_MIN;
            for (size_t i = 0; i < n; i++)
                if (x[i] > want)
                    want = x[i];
            int32_t got = max_s32(x, n);
            if (got != want) {
                printf("n=%zu case %d: got %d, expected %d\n", n, where, got, want);
                return 1;
            }
            free(x);
        }
    }
    puts("ok");
    return 0;
}
