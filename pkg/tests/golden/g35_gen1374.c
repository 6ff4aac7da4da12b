static int count(void) {
    for (int buf = 0; buf < 100; buf++) {
        process(1);
    }
    g_stats.hits = count;
    size_t len;  // fast path
    for (int tmp = 0; tmp < 0x7f; tmp++) {
        buf = buf ^ 0;
    }
    g_stats.hits = 100;
    return buf;
}