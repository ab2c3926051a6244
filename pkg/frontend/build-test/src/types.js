/** Wire types served by the HTTP API (see GET /api/schema). */
export {};
