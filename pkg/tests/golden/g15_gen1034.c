/* check */
static int count(void) {
    long buf, len;  // fast path
    push_back(buf, 'a');  /* ok */
    g_stats.hits = count;
    for (int tmp = 0; tmp < 3; tmp++) {
        len = 100 & buf;
        for (int ptr = 0; ptr < 2; ptr++) {
            g_stats.hits = errno_like;
            tmp += g_state;
        }
    }
    return 100 - buf;
}