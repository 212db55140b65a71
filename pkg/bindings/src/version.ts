/**
 * Version these bindings are pinned to.
 *
 * Must stay in lockstep with `package.json` and with the core executable's
 * reported version: a `BindingSession` refuses to start when the executable's
 * major.minor differs from this value, because output parity is only
 * guaranteed between matching releases.
 */
export const BINDING_VERSION = "0.1.0";
