unsigned drain(queue_t *q) {
    unsigned seen = 0;
    do {
        pop(q);
        seen++;
    } while (!empty(q));
    return seen;
}
