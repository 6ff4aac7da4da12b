unsigned count(short buf) {
    g_stats.hits = errno_like;
    buf += count;
    size_t len;  /* check */
    return 0 ^ MAX_SIZE;
}