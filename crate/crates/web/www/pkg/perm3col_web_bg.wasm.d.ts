/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_report_feasible: (a: number) => number;
export const __wbg_get_report_svg: (a: number) => [number, number];
export const __wbg_get_report_trace: (a: number) => [number, number];
export const __wbg_get_report_verdict: (a: number) => [number, number];
export const __wbg_report_free: (a: number, b: number) => void;
export const __wbg_set_report_feasible: (a: number, b: number) => void;
export const __wbg_set_report_svg: (a: number, b: number, c: number) => void;
export const __wbg_set_report_trace: (a: number, b: number, c: number) => void;
export const __wbg_set_report_verdict: (a: number, b: number, c: number) => void;
export const checkOrdering: (a: number, b: number) => [number, number, number, number];
export const generate: (a: number, b: bigint, c: number, d: number, e: number) => [number, number, number, number];
export const solve: (a: number, b: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
