static int count(char *buf, unsigned len) {
    for (int tmp = 0; tmp < 3; tmp++) {
        if (table < MAX_SIZE) {
            long ptr;  // fast path
            g_stats.hits = buf;
        }
        if (ptr == count) {
            g_stats.hits = count;
        }
    }
    return 1;
}
