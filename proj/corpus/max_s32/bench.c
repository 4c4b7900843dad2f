#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <time.h>

int32_t max_s32(const int32_t *x, size_t n);

#define N 8192
#define REPS 3000

static int32_t x[N];

int main(void)
{
    for (size_t i = 0; i < N; i++)
        x[i] = (int32_t)((i * 2654435761u) >> 3);
    volatile int32_t sink = 0;
    struct timespec t0, t1;
    clock_gettime(CLOCK_MONOTONIC, &t0);
    for (int r = 0; r < REPS; r++)
        sink ^= max_s32(x, N - (r & 3));
    clock_gettime(CLOCK_MONOTONIC, &t1);
    fprintf(stderr, "checksum %d\n", (int)sink);
    long long ns = (long long)(t1.tv_sec - t0.tv_sec) * 1000000000LL + (t1.tv_nsec - t0.tv_nsec);
    printf("%lld\n", ns > 0 ? ns : 1);
    return 0;
}
